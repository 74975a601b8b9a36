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

#include "oneshot/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {
namespace {

constexpr double kTestTolerance = 1e-9;
constexpr double kMuCap = 1e18;
constexpr double kGammaFloor = -745.0;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    std::ostringstream msg;
    msg << "eps = " << eps << " is outside (0,1)";
    throw Error(ErrorCode::kEpsOutOfRange, msg.str());
  }
}

void check_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw Error(ErrorCode::kDimMismatch, msg.str());
  }
}

// Projector onto {rho - mu sigma > 0} and its rho-mass. The cutoff follows the
// scale of rho - mu sigma, but tighter than the default so large mu still
// resolves the small eigenvalues of rho.
struct Threshold {
  HermitianOperator projector;
  double rho_mass;
};

class ThresholdFamily {
 public:
  ThresholdFamily(const HermitianOperator& rho, const HermitianOperator& sigma)
      : rho_(rho),
        sigma_(sigma),
        rho_top_(spectral_decompose(rho).max_eigenvalue()),
        sigma_top_(spectral_decompose(sigma).max_eigenvalue()) {}

  Threshold at(double mu) const {
    const HermitianOperator h = rho_ - sigma_ * mu;
    const double cutoff = 1e-14 * h.dim() * (rho_top_ + mu * sigma_top_);
    HermitianOperator p = support_projector(spectral_decompose(h), cutoff);
    const double mass = trace_product(rho_, p);
    return {std::move(p), mass};
  }

 private:
  const HermitianOperator& rho_;
  const HermitianOperator& sigma_;
  double rho_top_;
  double sigma_top_;
};

// Tr[rho (I - supp sigma)] together with I - supp sigma.
std::pair<double, HermitianOperator> kernel_leak(const HermitianOperator& rho, const HermitianOperator& sigma) {
  HermitianOperator kernel = HermitianOperator::identity(rho.dim()) - support_projector(psd_spectrum(sigma));
  const double leak = trace_product(rho, kernel);
  return {leak, std::move(kernel)};
}

// Largest eigenvalue of sigma^{-1/2} rho sigma^{-1/2}, at least 1.
double quotient_scale(const HermitianOperator& rho, const HermitianOperator& sigma) {
  return std::max(1.0, spectral_decompose(nc_quotient(rho, sigma)).max_eigenvalue());
}

}  // namespace

TwoOutcomeTest::TwoOutcomeTest(const HermitianOperator& t) {
  Spectrum s = spectral_decompose(t);
  if (s.min_eigenvalue() < -kTestTolerance || s.max_eigenvalue() > 1.0 + kTestTolerance) {
    std::ostringstream msg;
    msg << "test spectrum [" << s.min_eigenvalue() << ", " << s.max_eigenvalue() << "] leaves [0,1]";
    throw Error(ErrorCode::kSpectrumOutOfRange, msg.str());
  }
  if (s.min_eigenvalue() < 0.0 || s.max_eigenvalue() > 1.0) {
    s.eigenvalues = s.eigenvalues.cwiseMax(0.0).cwiseMin(1.0);
    t_ = s.reconstruct();
  } else {
    t_ = t;
  }
}

HelstromResult helstrom(const HermitianOperator& a, const HermitianOperator& b) {
  check_same_dim(a, b, "helstrom");
  const HermitianOperator pa = require_psd(a, "first operator");
  const HermitianOperator pb = require_psd(b, "second operator");
  const double error = nc_min_trace(pa, pb);
  return {error, TwoOutcomeTest(support_projector(pa - pb))};
}

POVM pgm(std::span<const HermitianOperator> states) {
  if (states.empty()) throw Error(ErrorCode::kAllZero, "pgm of an empty ensemble");
  const int d = states[0].dim();
  HermitianOperator sum = HermitianOperator::zero(d);
  std::vector<HermitianOperator> gated;
  gated.reserve(states.size());
  for (const auto& s : states) {
    check_same_dim(states[0], s, "pgm");
    gated.push_back(require_psd(s, "ensemble state"));
    sum = sum + gated.back();
  }
  if (!(sum.trace() > 0.0)) throw Error(ErrorCode::kAllZero, "ensemble has zero total trace");
  const Spectrum spectrum = psd_spectrum(sum, "ensemble sum");
  const Matrix w = apply_spectral_function(spectrum, SpectralFunction::pseudo_inv_sqrt()).matrix();
  POVM povm;
  povm.gram_support = support_projector(spectrum);
  for (const auto& s : gated) povm.elements.push_back(HermitianOperator::from_hermitian_unchecked(w * s.matrix() * w));
  povm.elements[0] = povm.elements[0] + (HermitianOperator::identity(d) - povm.gram_support);
  return povm;
}

std::vector<double> pgm_message_errors(std::span<const HermitianOperator> states) {
  if (states.empty()) throw Error(ErrorCode::kAllZero, "pgm of an empty ensemble");
  const int d = states[0].dim();
  HermitianOperator sum = HermitianOperator::zero(d);
  for (const auto& s : states) {
    check_same_dim(states[0], s, "pgm_error");
    sum = sum + s;
  }
  if (!(sum.trace() > 0.0)) throw Error(ErrorCode::kAllZero, "ensemble has zero total trace");
  const Spectrum spectrum = psd_spectrum(sum, "ensemble sum");
  const Matrix w = apply_spectral_function(spectrum, SpectralFunction::pseudo_inv_sqrt()).matrix();
  const HermitianOperator support = support_projector(spectrum);
  std::vector<double> errors;
  errors.reserve(states.size());
  for (const auto& s : states) {
    const double tr = s.trace();
    if (tr - trace_product(s, support) > 1e-9) {
      throw Error(ErrorCode::kNumericalFailure, "ensemble state leaks outside the Gram support");
    }
    // Tr[s Pi_s] = Tr[(W s)(W s)].
    const Matrix y = w * s.matrix();
    errors.push_back(std::clamp(tr - y.cwiseProduct(y.transpose()).sum().real(), 0.0, std::max(tr, 0.0)));
  }
  return errors;
}

double pgm_weighted_error(std::span<const HermitianOperator> states) {
  double total = 0.0;
  for (double e : pgm_message_errors(states)) total += e;
  return total;
}

double pgm_error(std::span<const HermitianOperator> states) {
  double total = 0.0;
  for (const auto& s : states) total += s.trace();
  if (!(std::abs(total - 1.0) <= kTraceTolerance)) {
    std::ostringstream msg;
    msg << "weighted states have total trace " << total;
    throw Error(ErrorCode::kNotNormalized, msg.str());
  }
  for (const auto& s : states) require_psd(s, "ensemble state");
  return pgm_weighted_error(states);
}

NPResult neyman_pearson(const DensityOperator& rho_in, const DensityOperator& sigma_in, double eps,
                        double bisect_tol) {
  check_eps(eps);
  if (!(bisect_tol > 0.0)) throw Error(ErrorCode::kDomainError, "bisect_tol must be positive");
  const HermitianOperator& rho = rho_in.op();
  const HermitianOperator& sigma = sigma_in.op();
  check_same_dim(rho, sigma, "neyman_pearson");
  const double target = 1.0 - eps;

  auto finish = [&](double mu, const HermitianOperator& t, bool orthogonal) {
    TwoOutcomeTest test(t);
    const double accept = trace_product(rho, test.op());
    const double type2 = orthogonal ? 0.0 : std::max(0.0, trace_product(sigma, test.op()));
    return NPResult{mu, test, 1.0 - accept, type2, orthogonal};
  };

  // Accepting only on ker(sigma) costs nothing under sigma.
  const auto [leak, kernel] = kernel_leak(rho, sigma);
  if (leak >= target) return finish(std::numeric_limits<double>::infinity(), kernel * (target / leak), true);

  const ThresholdFamily family(rho, sigma);
  double lo = 0.0;
  Threshold t_lo = family.at(0.0);
  if (t_lo.rho_mass < target) throw Error(ErrorCode::kSupportFailure, "no test reaches the type-I constraint");
  double hi = 2.0 * quotient_scale(rho, sigma);
  Threshold t_hi = family.at(hi);
  while (t_hi.rho_mass >= target && hi < kMuCap) {
    lo = hi;
    t_lo = std::move(t_hi);
    hi *= 2.0;
    t_hi = family.at(hi);
  }
  if (t_hi.rho_mass >= target) {
    // Roundoff only: rescale the last feasible projector onto the constraint.
    return finish(hi, t_hi.projector * (target / t_hi.rho_mass), false);
  }
  for (int it = 0; it < kBisectIterationCap && hi - lo > bisect_tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    Threshold t_mid = family.at(mid);
    if (t_mid.rho_mass >= target) {
      lo = mid;
      t_lo = std::move(t_mid);
    } else {
      hi = mid;
      t_hi = std::move(t_mid);
    }
  }
  // The jump at the threshold is split convexly between the bracket ends.
  const double w = (target - t_hi.rho_mass) / (t_lo.rho_mass - t_hi.rho_mass);
  const HermitianOperator t = t_hi.projector + (t_lo.projector - t_hi.projector) * w;
  return finish(0.5 * (lo + hi), t, false);
}

DivergenceValue ht_divergence(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                              double bisect_tol) {
  const NPResult np = neyman_pearson(rho, sigma, eps, bisect_tol);
  if (np.orthogonal || !(np.type2 > 0.0)) return DivergenceValue::infinite(DivergenceValue::Kind::kHypothesisTesting);
  return DivergenceValue::finite(-std::log(np.type2), DivergenceValue::Kind::kHypothesisTesting);
}

DivergenceValue is_divergence(const DensityOperator& rho_in, const DensityOperator& sigma_in, double eps,
                              double bisect_tol) {
  check_eps(eps);
  if (!(bisect_tol > 0.0)) throw Error(ErrorCode::kDomainError, "bisect_tol must be positive");
  const HermitianOperator& rho = rho_in.op();
  const HermitianOperator& sigma = sigma_in.op();
  check_same_dim(rho, sigma, "is_divergence");
  const double target = 1.0 - eps;
  // Tr[rho {rho <= mu sigma}] <= eps  <=>  Tr[rho {rho > mu sigma}] >= 1 - eps.
  if (kernel_leak(rho, sigma).first >= target) {
    return DivergenceValue::infinite(DivergenceValue::Kind::kInformationSpectrum);
  }
  const ThresholdFamily family(rho, sigma);
  auto feasible = [&](double gamma) { return family.at(std::exp(gamma)).rho_mass >= target; };

  double hi = std::log(quotient_scale(rho, sigma)) + 1.0;
  for (double step = 1.0; feasible(hi) && hi < std::log(kMuCap); step *= 2.0) hi += step;
  if (feasible(hi)) return DivergenceValue::infinite(DivergenceValue::Kind::kInformationSpectrum);
  double lo = std::min(0.0, hi) - 1.0;
  for (double step = 1.0; !feasible(lo); step *= 2.0) {
    lo -= step;
    if (lo < kGammaFloor) throw Error(ErrorCode::kSupportFailure, "no threshold meets the constraint");
  }
  for (int it = 0; it < kBisectIterationCap && hi - lo > bisect_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return DivergenceValue::finite(lo, DivergenceValue::Kind::kInformationSpectrum);
}

double check_hn_inequality(const HermitianOperator& a, const HermitianOperator& b, double c) {
  check_same_dim(a, b, "check_hn_inequality");
  if (!(c > 0.0)) throw Error(ErrorCode::kDomainError, "c must be positive");
  const Spectrum sa = spectral_decompose(a);
  if (sa.min_eigenvalue() < -kTestTolerance || sa.max_eigenvalue() > 1.0 + kTestTolerance) {
    std::ostringstream msg;
    msg << "A has spectrum [" << sa.min_eigenvalue() << ", " << sa.max_eigenvalue() << "] outside [0,1]";
    throw Error(ErrorCode::kSpectrumOutOfRange, msg.str());
  }
  const HermitianOperator pb = require_psd(b, "B");
  const HermitianOperator id = HermitianOperator::identity(a.dim());
  const HermitianOperator gap =
      (id - a) * (1.0 + c) + pb * (2.0 + c + 1.0 / c) - (id - nc_quotient(a, a + pb));
  return spectral_decompose(gap).min_eigenvalue();
}

TraceChain check_trace_chain(const HermitianOperator& a, const HermitianOperator& b) {
  check_same_dim(a, b, "check_trace_chain");
  const HermitianOperator pa = require_psd(a, "A");
  const HermitianOperator pb = require_psd(b, "B");
  const HermitianOperator sum = pa + pb;
  const double total = sum.trace();
  if (!(total > 0.0)) throw Error(ErrorCode::kZeroTrace, "Tr[A + B] must be positive");
  const double lhs = trace_product(pa, nc_quotient(pb, sum));
  const double tr_min = nc_min_trace(pa, pb);
  const double tr_max = total - tr_min;
  return {lhs, tr_max * tr_min / total, tr_min};
}

CollisionStep check_collision_step(const HermitianOperator& a, const HermitianOperator& b) {
  check_same_dim(a, b, "check_collision_step");
  const HermitianOperator pa = require_psd(a, "A");
  const HermitianOperator pb = require_psd(b, "B");
  const HermitianOperator sum = pa + pb;
  const double total = sum.trace();
  if (!(total > 0.0)) throw Error(ErrorCode::kZeroTrace, "Tr[A + B] must be positive");
  const HermitianOperator x = direct_sum(pa, pb);
  const HermitianOperator y = direct_sum(sum, sum);
  // Pi_A = {A - B > 0} is optimal for telling A from B; Pi_B = I - Pi_A.
  const HermitianOperator pi_a = helstrom(pa, pb).optimal_test.op();
  const HermitianOperator pi_b = HermitianOperator::identity(a.dim()) - pi_a;
  const HermitianOperator guess = direct_sum(pi_a, pi_b);
  const double x1 = trace_product(x, guess);
  const double y1 = trace_product(y, guess);
  const HermitianOperator lx = HermitianOperator::diagonal({x1, x.trace() - x1});
  const HermitianOperator ly = HermitianOperator::diagonal({y1, y.trace() - y1});
  return {std::exp(collision_divergence(x, y).value()), std::exp(collision_divergence(lx, ly).value())};
}

PgmTestErrors pgm_test_errors(const HermitianOperator& rho, const HermitianOperator& sigma, double mu) {
  check_same_dim(rho, sigma, "pgm_test_errors");
  if (!(mu >= 0.0)) throw Error(ErrorCode::kDomainError, "mu must be nonnegative");
  const HermitianOperator scaled = sigma * mu;
  const HermitianOperator sum = rho + scaled;
  const HermitianOperator accept = nc_quotient(rho, sum);
  const HermitianOperator reject = HermitianOperator::identity(rho.dim()) - accept;
  return {trace_product(rho, reject), trace_product(sigma, accept)};
}

HoeffdingResult hoeffding_pgm(const DensityOperator& rho, const DensityOperator& sigma, double order, double r) {
  if (!(order > 0.0 && order < 1.0)) {
    std::ostringstream msg;
    msg << "order " << order << " is outside (0,1)";
    throw Error(ErrorCode::kOrderOutOfRange, msg.str());
  }
  if (!(r > 0.0)) throw Error(ErrorCode::kDomainError, "r must be positive");
  const DivergenceValue d = petz_renyi(rho, sigma, order);
  const double type2_bound = std::exp(-r);
  if (d.is_infinite()) {
    const PgmTestErrors e = pgm_test_errors(rho.op(), sigma.op(), 0.0);
    return {0.0, d, 0.0, type2_bound, e.type1, e.type2};
  }
  const double s = (1.0 - order) / order;
  const double mu = std::exp(-s * d.value() + r / order);
  const PgmTestErrors e = pgm_test_errors(rho.op(), sigma.op(), mu);
  return {mu, d, std::exp(-s * (d.value() - r)), type2_bound, e.type1, e.type2};
}

SteinResult stein_pgm(const DensityOperator& rho, const DensityOperator& sigma, double eps, double delta) {
  check_eps(eps);
  if (!(delta > 0.0 && delta < eps)) {
    std::ostringstream msg;
    msg << "delta = " << delta << " is outside (0, eps)";
    throw Error(ErrorCode::kDeltaOutOfRange, msg.str());
  }
  const DivergenceValue dh = ht_divergence(rho, sigma, eps - delta);
  if (dh.is_infinite()) {
    // mu -> infinity: the PGM tends to the projector onto ker(sigma).
    const auto [leak, kernel] = kernel_leak(rho.op(), sigma.op());
    return {dh, std::numeric_limits<double>::infinity(), 1.0 - leak, 0.0, 0.0};
  }
  const double mu = delta * std::exp(dh.value());
  const PgmTestErrors e = pgm_test_errors(rho.op(), sigma.op(), mu);
  return {dh, mu, e.type1, e.type2, 1.0 / mu};
}

}  // namespace oneshot
