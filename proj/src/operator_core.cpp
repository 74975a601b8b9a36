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

#include "oneshot/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {
namespace {

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw Error(ErrorCode::kDimMismatch, msg.str());
  }
}

Matrix symmetrized(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

double cutoff_or_default(const Spectrum& s, std::optional<double> cutoff) {
  return cutoff ? *cutoff : default_zero_cutoff(s);
}

// Digits of a flat index in the mixed radix given by dims (first factor most significant).
void unflatten(int index, const std::vector<int>& dims, std::vector<int>& digits) {
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    digits[f] = index % dims[f];
    index /= dims[f];
  }
}

}  // namespace

HermitianOperator::HermitianOperator() : m_(Matrix::Zero(1, 1)) {}

HermitianOperator::HermitianOperator(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    std::ostringstream msg;
    msg << "expected a nonempty square matrix, got " << entries.rows() << "x" << entries.cols();
    throw Error(ErrorCode::kDimMismatch, msg.str());
  }
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = i; j < entries.cols(); ++j) {
      const double dev = std::abs(entries(i, j) - std::conj(entries(j, i)));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  }
  if (!(worst <= kHermiticityTolerance)) {
    std::ostringstream msg;
    msg << "entry (" << wi << "," << wj << ") deviates from Hermitian symmetry by " << worst;
    throw Error(ErrorCode::kNonHermitian, msg.str());
  }
  m_ = symmetrized(entries);
}

HermitianOperator::HermitianOperator(const Matrix& entries, Unchecked) : m_(symmetrized(entries)) {}

HermitianOperator HermitianOperator::from_hermitian_unchecked(const Matrix& entries) {
  return HermitianOperator(entries, Unchecked{});
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(Matrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(Matrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                          static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianOperator HermitianOperator::outer(const Vector& v) {
  return HermitianOperator(v * v.adjoint(), Unchecked{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(*this, other, "operator+");
  return HermitianOperator(m_ + other.m_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(*this, other, "operator-");
  return HermitianOperator(m_ - other.m_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-() const { return HermitianOperator(-m_, Unchecked{}); }

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s, Unchecked{});
}

double frobenius_distance(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "frobenius_distance");
  return (a.matrix() - b.matrix()).norm();
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "trace_product");
  // Tr[AB] = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

HermitianOperator Spectrum::reconstruct() const {
  return HermitianOperator::from_hermitian_unchecked(
      eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint());
}

Spectrum spectral_decompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "Hermitian eigensolver did not converge");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors(), h.dim()};
}

Spectrum psd_spectrum(const HermitianOperator& h, const char* what) {
  Spectrum s = spectral_decompose(h);
  if (s.min_eigenvalue() < -kPsdTolerance) {
    std::ostringstream msg;
    msg << what << " has eigenvalue " << s.min_eigenvalue() << " below -" << kPsdTolerance;
    throw Error(ErrorCode::kNotPSD, msg.str());
  }
  s.eigenvalues = s.eigenvalues.cwiseMax(0.0);
  return s;
}

HermitianOperator require_psd(const HermitianOperator& h, const char* what) {
  Spectrum s = spectral_decompose(h);
  if (s.min_eigenvalue() >= 0.0) return h;
  if (s.min_eigenvalue() < -kPsdTolerance) {
    std::ostringstream msg;
    msg << what << " has eigenvalue " << s.min_eigenvalue() << " below -" << kPsdTolerance;
    throw Error(ErrorCode::kNotPSD, msg.str());
  }
  s.eigenvalues = s.eigenvalues.cwiseMax(0.0);
  return s.reconstruct();
}

double default_zero_cutoff(const Spectrum& s) {
  const double scale = s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues.cwiseAbs().maxCoeff();
  return static_cast<double>(s.source_dim) * scale * 1e-12;
}

double SpectralFunction::operator()(double lambda, double cutoff) const {
  const bool is_zero = std::abs(lambda) <= cutoff;
  switch (kind_) {
    case Kind::kAbs:
      return std::abs(lambda);
    case Kind::kPositivePart:
      return lambda > 0.0 ? lambda : 0.0;
    case Kind::kPower: {
      if (exponent_ < 1.0) {
        if (lambda < -cutoff) {
          throw Error(ErrorCode::kDomainError, "fractional power of a negative eigenvalue");
        }
        if (is_zero) return 0.0;
        return std::pow(lambda, exponent_);
      }
      if (lambda < 0.0 && exponent_ != std::floor(exponent_)) {
        if (is_zero) return 0.0;
        throw Error(ErrorCode::kDomainError, "non-integer power of a negative eigenvalue");
      }
      return std::pow(lambda, exponent_);
    }
    case Kind::kPseudoInvSqrt:
      if (lambda < -cutoff) {
        throw Error(ErrorCode::kDomainError, "inverse square root of a negative eigenvalue");
      }
      return is_zero ? 0.0 : 1.0 / std::sqrt(lambda);
    case Kind::kLog:
      if (lambda < -cutoff) {
        throw Error(ErrorCode::kDomainError, "logarithm of a negative eigenvalue");
      }
      return is_zero ? 0.0 : std::log(lambda);
  }
  return 0.0;
}

HermitianOperator apply_spectral_function(const Spectrum& s, SpectralFunction f,
                                          std::optional<double> zero_cutoff) {
  const double cutoff = cutoff_or_default(s, zero_cutoff);
  RealVector mapped(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(s.eigenvalues(i), cutoff);
  return HermitianOperator::from_hermitian_unchecked(
      s.eigenvectors * mapped.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint());
}

HermitianOperator apply_spectral_function(const HermitianOperator& h, SpectralFunction f,
                                          std::optional<double> zero_cutoff) {
  return apply_spectral_function(spectral_decompose(h), f, zero_cutoff);
}

HermitianOperator support_projector(const Spectrum& s, std::optional<double> zero_cutoff) {
  const double cutoff = cutoff_or_default(s, zero_cutoff);
  Matrix p = Matrix::Zero(s.source_dim, s.source_dim);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) > cutoff) p += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
  }
  return HermitianOperator::from_hermitian_unchecked(p);
}

HermitianOperator support_projector(const HermitianOperator& h, std::optional<double> zero_cutoff) {
  return support_projector(spectral_decompose(h), zero_cutoff);
}

SignProjectors sign_projectors(const HermitianOperator& h, std::optional<double> zero_cutoff) {
  const Spectrum s = spectral_decompose(h);
  const double cutoff = cutoff_or_default(s, zero_cutoff);
  const int d = h.dim();
  Matrix pos = Matrix::Zero(d, d), zero = Matrix::Zero(d, d), neg = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const Matrix proj = s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    const double l = s.eigenvalues(i);
    if (l > cutoff) {
      pos += proj;
    } else if (l < -cutoff) {
      neg += proj;
    } else {
      zero += proj;
    }
  }
  return {HermitianOperator::from_hermitian_unchecked(pos), HermitianOperator::from_hermitian_unchecked(zero),
          HermitianOperator::from_hermitian_unchecked(neg)};
}

HermitianOperator nc_min(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "nc_min");
  const HermitianOperator abs_diff = apply_spectral_function(a - b, SpectralFunction::abs());
  return (a + b - abs_diff) * 0.5;
}

HermitianOperator nc_max(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "nc_max");
  const HermitianOperator abs_diff = apply_spectral_function(a - b, SpectralFunction::abs());
  return (a + b + abs_diff) * 0.5;
}

double trace_norm(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().sum();
}

double nc_min_trace(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "nc_min_trace");
  return 0.5 * (a.trace() + b.trace() - trace_norm(a - b));
}

HermitianOperator nc_quotient(const HermitianOperator& a, const HermitianOperator& b,
                              std::optional<double> zero_cutoff) {
  require_same_dim(a, b, "nc_quotient");
  const HermitianOperator a_psd = require_psd(a, "numerator");
  const Spectrum sb = psd_spectrum(b, "denominator");
  const Matrix inv_sqrt = apply_spectral_function(sb, SpectralFunction::pseudo_inv_sqrt(), zero_cutoff).matrix();
  return HermitianOperator::from_hermitian_unchecked(inv_sqrt * a_psd.matrix() * inv_sqrt);
}

SubsystemShape::SubsystemShape(std::initializer_list<int> dims) : SubsystemShape(std::vector<int>(dims)) {}

SubsystemShape::SubsystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::kShapeMismatch, "shape needs at least one factor");
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorCode::kShapeMismatch, "factor dimensions must be positive");
  }
}

int SubsystemShape::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
}

void SubsystemShape::require_dim(int dim, const char* what) const {
  if (total_dim() != dim) {
    std::ostringstream msg;
    msg << what << ": shape product " << total_dim() << " does not match dimension " << dim;
    throw Error(ErrorCode::kShapeMismatch, msg.str());
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::from_hermitian_unchecked(kron(a.matrix(), b.matrix()));
}

HermitianOperator tensor_product(std::span<const HermitianOperator> factors) {
  if (factors.empty()) return HermitianOperator::identity(1);
  Matrix out = factors[0].matrix();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i].matrix());
  return HermitianOperator::from_hermitian_unchecked(out);
}

HermitianOperator partial_trace(const HermitianOperator& a, const SubsystemShape& shape,
                                std::span<const int> keep) {
  shape.require_dim(a.dim(), "partial_trace");
  if (keep.empty()) throw Error(ErrorCode::kEmptyKeepSet, "partial_trace needs at least one kept factor");
  const int n = shape.factors();
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw Error(ErrorCode::kShapeMismatch, "kept factor index out of range");
    kept[k] = true;
  }
  const std::vector<int>& dims = shape.factor_dims();
  int kept_dim = 1;
  for (int f = 0; f < n; ++f) {
    if (kept[f]) kept_dim *= dims[f];
  }
  const int d = a.dim();
  // Split each flat index into (kept index, traced index).
  std::vector<int> kept_index(d), traced_index(d), digits(n);
  for (int i = 0; i < d; ++i) {
    unflatten(i, dims, digits);
    int k = 0, t = 0;
    for (int f = 0; f < n; ++f) {
      if (kept[f]) {
        k = k * dims[f] + digits[f];
      } else {
        t = t * dims[f] + digits[f];
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  const Matrix& m = a.matrix();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += m(r, c);
    }
  }
  return HermitianOperator::from_hermitian_unchecked(out);
}

HermitianOperator partial_trace(const HermitianOperator& a, const SubsystemShape& shape,
                                std::initializer_list<int> keep) {
  return partial_trace(a, shape, std::span<const int>(keep.begin(), keep.size()));
}

SubsystemShape permute_shape(const SubsystemShape& shape, std::span<const int> order) {
  std::vector<int> dims;
  dims.reserve(order.size());
  for (int f : order) dims.push_back(shape.dim(f));
  return SubsystemShape(std::move(dims));
}

HermitianOperator permute_factors(const HermitianOperator& a, const SubsystemShape& shape,
                                  std::span<const int> order) {
  shape.require_dim(a.dim(), "permute_factors");
  const int n = shape.factors();
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kShapeMismatch, "permutation length differs from factor count");
  }
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (int f = 0; f < n; ++f) {
    if (sorted[f] != f) throw Error(ErrorCode::kShapeMismatch, "not a permutation of the factors");
  }
  const SubsystemShape out_shape = permute_shape(shape, order);
  const std::vector<int>& in_dims = shape.factor_dims();
  const std::vector<int>& out_dims = out_shape.factor_dims();
  const int d = a.dim();
  // source[i] = input flat index of output basis vector i.
  std::vector<int> source(d), out_digits(n), in_digits(n);
  for (int i = 0; i < d; ++i) {
    unflatten(i, out_dims, out_digits);
    for (int f = 0; f < n; ++f) in_digits[order[f]] = out_digits[f];
    int flat = 0;
    for (int f = 0; f < n; ++f) flat = flat * in_dims[f] + in_digits[f];
    source[i] = flat;
  }
  Matrix out(d, d);
  const Matrix& m = a.matrix();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) out(r, c) = m(source[r], source[c]);
  }
  return HermitianOperator::from_hermitian_unchecked(out);
}

HermitianOperator permute_factors(const HermitianOperator& a, const SubsystemShape& shape,
                                  std::initializer_list<int> order) {
  return permute_factors(a, shape, std::span<const int>(order.begin(), order.size()));
}

HermitianOperator direct_sum(const HermitianOperator& a, const HermitianOperator& b) {
  const std::vector<HermitianOperator> blocks{a, b};
  return direct_sum(blocks);
}

HermitianOperator direct_sum(std::span<const HermitianOperator> blocks) {
  int total = 0;
  for (const auto& b : blocks) total += b.dim();
  if (total == 0) throw Error(ErrorCode::kDimMismatch, "direct_sum of no blocks");
  Matrix out = Matrix::Zero(total, total);
  int offset = 0;
  for (const auto& b : blocks) {
    out.block(offset, offset, b.dim(), b.dim()) = b.matrix();
    offset += b.dim();
  }
  return HermitianOperator::from_hermitian_unchecked(out);
}

}  // namespace oneshot
