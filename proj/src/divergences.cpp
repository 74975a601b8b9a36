// Copyright 2026 The oneshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oneshot/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {
namespace {

using Kind = DivergenceValue::Kind;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    std::ostringstream msg;
    msg << "order " << alpha << " is outside (0,1) U (1,2]";
    throw Error(ErrorCode::kAlphaOutOfRange, msg.str());
  }
}

HermitianOperator psd_power(const HermitianOperator& h, double p) {
  return apply_spectral_function(psd_spectrum(h), SpectralFunction::power(p));
}

HermitianOperator psd_log(const HermitianOperator& h) {
  return apply_spectral_function(psd_spectrum(h), SpectralFunction::log());
}

// log rho - log sigma; caller has checked support inclusion.
Matrix log_ratio(const HermitianOperator& a, const HermitianOperator& b) {
  return psd_log(a).matrix() - psd_log(b).matrix();
}

}  // namespace

double DivergenceValue::value() const {
  if (infinite_) throw Error(ErrorCode::kDomainError, "divergence is infinite");
  return value_;
}

double DivergenceValue::as_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string_view divergence_kind_name(DivergenceValue::Kind kind) {
  switch (kind) {
    case Kind::kPetz: return "petz";
    case Kind::kSandwiched2: return "sandwiched2";
    case Kind::kMax: return "max";
    case Kind::kKl: return "kl";
    case Kind::kVariance: return "variance";
    case Kind::kHypothesisTesting: return "ht";
    case Kind::kInformationSpectrum: return "is";
  }
  return "?";
}

double support_leak(const HermitianOperator& a, const HermitianOperator& b) {
  const HermitianOperator pb = support_projector(psd_spectrum(b, "second argument"));
  return trace_product(a, HermitianOperator::identity(a.dim()) - pb);
}

bool support_contained(const HermitianOperator& a, const HermitianOperator& b) {
  return support_leak(a, b) <= kSupportTolerance;
}

double petz_trace(const HermitianOperator& a, const HermitianOperator& b, double s) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimMismatch, "petz_trace: dimensions differ");
  return trace_product(psd_power(a, s), psd_power(b, 1.0 - s));
}

DivergenceValue petz_renyi(const HermitianOperator& a, const HermitianOperator& b, double alpha) {
  check_alpha(alpha);
  if (alpha > 1.0 && !support_contained(a, b)) return DivergenceValue::infinite(Kind::kPetz, alpha);
  const double q = petz_trace(a, b, alpha);
  if (!(q > 0.0)) {
    // Orthogonal supports with alpha < 1.
    return DivergenceValue::infinite(Kind::kPetz, alpha);
  }
  return DivergenceValue::finite(std::log(q) / (alpha - 1.0), Kind::kPetz, alpha);
}

DivergenceValue petz_renyi(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
  return petz_renyi(rho.op(), sigma.op(), alpha);
}

DivergenceValue relative_entropy(const HermitianOperator& a, const HermitianOperator& b) {
  if (!support_contained(a, b)) return DivergenceValue::infinite(Kind::kKl, 1.0);
  const Matrix l = log_ratio(a, b);
  const double d = (a.matrix() * l).trace().real();
  return DivergenceValue::finite(d, Kind::kKl, 1.0);
}

DivergenceValue relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  return relative_entropy(rho.op(), sigma.op());
}

DivergenceValue relative_entropy_variance(const HermitianOperator& a, const HermitianOperator& b) {
  if (!support_contained(a, b)) {
    throw Error(ErrorCode::kSupportViolation, "variance undefined: relative entropy is infinite");
  }
  const Matrix l = log_ratio(a, b);
  const Matrix al = a.matrix() * l;
  const double d = al.trace().real();
  const double second = (al * l).trace().real();
  return DivergenceValue::finite(second - d * d, Kind::kVariance, 1.0);
}

DivergenceValue relative_entropy_variance(const DensityOperator& rho, const DensityOperator& sigma) {
  return relative_entropy_variance(rho.op(), sigma.op());
}

DivergenceValue collision_divergence(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimMismatch, "collision_divergence: dimensions differ");
  const HermitianOperator a_psd = require_psd(a, "first argument");
  if (!(a_psd.trace() > 0.0)) throw Error(ErrorCode::kZeroTrace, "collision_divergence of a zero operator");
  if (!support_contained(a_psd, b)) return DivergenceValue::infinite(Kind::kSandwiched2, 2.0);
  const Matrix r = psd_power(b, -0.25).matrix();
  const Matrix x = r * a_psd.matrix() * r;
  // Tr[X^2] for Hermitian X is the squared Frobenius norm.
  return DivergenceValue::finite(std::log(x.squaredNorm()), Kind::kSandwiched2, 2.0);
}

DivergenceValue max_relative_entropy(const HermitianOperator& a, const HermitianOperator& b) {
  if (!support_contained(a, b)) return DivergenceValue::infinite(Kind::kMax);
  const double top = spectral_decompose(nc_quotient(a, b)).max_eigenvalue();
  if (!(top > 0.0)) throw Error(ErrorCode::kZeroTrace, "max_relative_entropy of a zero operator");
  return DivergenceValue::finite(std::log(top), Kind::kMax);
}

DivergenceValue max_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  return max_relative_entropy(rho.op(), sigma.op());
}

DivergenceValue cq_mutual_renyi(const CQState& state, double alpha) {
  check_alpha(alpha);
  const HermitianOperator rho_b = state.marginal_b();
  const HermitianOperator rho_b_pow = psd_power(rho_b, 1.0 - alpha);
  // Block x contributes Tr[(p rho^x)^a (p rho_B)^(1-a)] = p^(1-a) Tr[block^a rho_B^(1-a)].
  double q = 0.0;
  for (const auto& block : state.blocks()) {
    const double p = block.trace();
    if (p <= 0.0) continue;
    q += std::pow(p, 1.0 - alpha) * trace_product(psd_power(block, alpha), rho_b_pow);
  }
  return DivergenceValue::finite(std::log(q) / (alpha - 1.0), Kind::kPetz, alpha);
}

double cq_mutual_information(const CQState& state) {
  const HermitianOperator rho_b = state.marginal_b();
  double total = 0.0;
  for (const auto& block : state.blocks()) {
    const double p = block.trace();
    if (p <= 0.0) continue;
    total += p * relative_entropy(block * (1.0 / p), rho_b).value();
  }
  return total;
}

double cq_mutual_information_variance(const CQState& state) {
  return relative_entropy_variance(state.joint_matrix(), state.product_of_marginals()).value();
}

double cq_conditional_renyi(const CQState& state, double alpha) {
  check_alpha(alpha);
  const HermitianOperator rho_b_pow = psd_power(state.marginal_b(), 1.0 - alpha);
  double q = 0.0;
  for (const auto& block : state.blocks()) {
    if (block.trace() <= 0.0) continue;
    q += trace_product(psd_power(block, alpha), rho_b_pow);
  }
  return -std::log(q) / (alpha - 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "probability " << p << " is outside (0,1)";
    throw Error(ErrorCode::kPOutOfRange, msg.str());
  }
  // Acklam's rational approximation, relative error about 1e-9.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step against the erfc-based CDF.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace oneshot
