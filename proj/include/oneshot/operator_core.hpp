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

#ifndef ONESHOT_OPERATOR_CORE_HPP_
#define ONESHOT_OPERATOR_CORE_HPP_

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oneshot {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Max |H(i,j) - conj(H(j,i))| accepted on construction.
inline constexpr double kHermiticityTolerance = 1e-10;
// Eigenvalues in [-kPsdTolerance, 0) are clipped to 0 on PSD-gated inputs.
inline constexpr double kPsdTolerance = 1e-10;

// Finite-dimensional complex Hermitian matrix. Immutable after construction;
// the stored matrix is exactly Hermitian ((H + H^dagger) / 2 is applied after
// the tolerance gate).
class HermitianOperator {
 public:
  HermitianOperator();
  explicit HermitianOperator(const Matrix& entries);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);
  static HermitianOperator diagonal(std::span<const double> values);
  static HermitianOperator diagonal(std::initializer_list<double> values);
  // |v><v| (no normalization).
  static HermitianOperator outer(const Vector& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator-() const;
  HermitianOperator operator*(double s) const;
  friend HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

  // Skips the hermiticity gate; the argument must be Hermitian up to roundoff.
  static HermitianOperator from_hermitian_unchecked(const Matrix& entries);

 private:
  struct Unchecked {};
  HermitianOperator(const Matrix& entries, Unchecked);

  Matrix m_;
};

double frobenius_distance(const HermitianOperator& a, const HermitianOperator& b);
// Re Tr[A B].
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

struct Spectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
  int source_dim = 0;

  HermitianOperator reconstruct() const;
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
};

Spectrum spectral_decompose(const HermitianOperator& h);

// Spectrum of a PSD-gated input: throws NotPSD below -kPsdTolerance, clips the
// remaining negative eigenvalues to 0.
Spectrum psd_spectrum(const HermitianOperator& h, const char* what = "operator");
HermitianOperator require_psd(const HermitianOperator& h, const char* what = "operator");

// dim * max|lambda| * 1e-12.
double default_zero_cutoff(const Spectrum& s);

class SpectralFunction {
 public:
  enum class Kind { kAbs, kPositivePart, kPower, kPseudoInvSqrt, kLog };

  static SpectralFunction abs() { return SpectralFunction(Kind::kAbs, 1.0); }
  static SpectralFunction positive_part() { return SpectralFunction(Kind::kPositivePart, 1.0); }
  static SpectralFunction power(double p) { return SpectralFunction(Kind::kPower, p); }
  static SpectralFunction pseudo_inv_sqrt() { return SpectralFunction(Kind::kPseudoInvSqrt, -0.5); }
  static SpectralFunction log() { return SpectralFunction(Kind::kLog, 0.0); }

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }

  // Scalar map; |lambda| <= cutoff counts as zero.
  double operator()(double lambda, double cutoff) const;

 private:
  SpectralFunction(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}
  Kind kind_;
  double exponent_;
};

HermitianOperator apply_spectral_function(const HermitianOperator& h, SpectralFunction f,
                                          std::optional<double> zero_cutoff = std::nullopt);
HermitianOperator apply_spectral_function(const Spectrum& s, SpectralFunction f,
                                          std::optional<double> zero_cutoff = std::nullopt);

// Projector onto eigenvectors with eigenvalue > cutoff.
HermitianOperator support_projector(const Spectrum& s, std::optional<double> zero_cutoff = std::nullopt);
HermitianOperator support_projector(const HermitianOperator& h,
                                    std::optional<double> zero_cutoff = std::nullopt);

// Projectors onto {H > cutoff}, {|H| <= cutoff}, {H < -cutoff}.
struct SignProjectors {
  HermitianOperator positive;
  HermitianOperator zero;
  HermitianOperator negative;
};
SignProjectors sign_projectors(const HermitianOperator& h, std::optional<double> zero_cutoff = std::nullopt);

// A ∧ B = (A + B - |A - B|) / 2. Defined for any Hermitian pair.
HermitianOperator nc_min(const HermitianOperator& a, const HermitianOperator& b);
// A ∨ B = (A + B + |A - B|) / 2.
HermitianOperator nc_max(const HermitianOperator& a, const HermitianOperator& b);
// Tr[A ∧ B] = (Tr A + Tr B - ||A - B||_1) / 2, without forming the operator.
double nc_min_trace(const HermitianOperator& a, const HermitianOperator& b);
double trace_norm(const HermitianOperator& h);

// B^{-1/2} A B^{-1/2} with the inverse taken on supp(B). A and B are PSD-gated.
HermitianOperator nc_quotient(const HermitianOperator& a, const HermitianOperator& b,
                              std::optional<double> zero_cutoff = std::nullopt);

class SubsystemShape {
 public:
  SubsystemShape() = default;
  SubsystemShape(std::initializer_list<int> dims);
  explicit SubsystemShape(std::vector<int> dims);

  const std::vector<int>& factor_dims() const { return dims_; }
  int factors() const { return static_cast<int>(dims_.size()); }
  int dim(int factor) const { return dims_.at(factor); }
  int total_dim() const;

  // Throws ShapeMismatch when total_dim() != dim.
  void require_dim(int dim, const char* what) const;

 private:
  std::vector<int> dims_;
};

// Kronecker product; the index of A varies slower (A-major).
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator tensor_product(std::span<const HermitianOperator> factors);
Matrix kron(const Matrix& a, const Matrix& b);

// Trace out every factor not in `keep`; kept factors stay in their original order.
HermitianOperator partial_trace(const HermitianOperator& a, const SubsystemShape& shape,
                                std::span<const int> keep);
HermitianOperator partial_trace(const HermitianOperator& a, const SubsystemShape& shape,
                                std::initializer_list<int> keep);

// Reorders tensor factors: output factor i is input factor order[i].
HermitianOperator permute_factors(const HermitianOperator& a, const SubsystemShape& shape,
                                  std::span<const int> order);
HermitianOperator permute_factors(const HermitianOperator& a, const SubsystemShape& shape,
                                  std::initializer_list<int> order);
SubsystemShape permute_shape(const SubsystemShape& shape, std::span<const int> order);

HermitianOperator direct_sum(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator direct_sum(std::span<const HermitianOperator> blocks);

}  // namespace oneshot

#endif  // ONESHOT_OPERATOR_CORE_HPP_
