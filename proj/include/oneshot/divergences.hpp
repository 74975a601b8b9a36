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

#ifndef ONESHOT_DIVERGENCES_HPP_
#define ONESHOT_DIVERGENCES_HPP_

#include <string_view>

#include "oneshot/operator_core.hpp"
#include "oneshot/quantum_model.hpp"

namespace oneshot {

// Support inclusion supp(A) within supp(B) is accepted when Tr[A (I - supp B)] <= this.
inline constexpr double kSupportTolerance = 1e-9;

// Real value or a tagged +infinity. All logarithms are natural.
class DivergenceValue {
 public:
  enum class Kind { kPetz, kSandwiched2, kMax, kKl, kVariance, kHypothesisTesting, kInformationSpectrum };

  static DivergenceValue finite(double value, Kind kind, double order = 0.0) {
    return DivergenceValue(value, false, kind, order);
  }
  static DivergenceValue infinite(Kind kind, double order = 0.0) { return DivergenceValue(0.0, true, kind, order); }

  bool is_infinite() const { return infinite_; }
  // Throws DomainError when infinite.
  double value() const;
  // +inf as a double when infinite; for comparisons.
  double as_double() const;
  Kind kind() const { return kind_; }
  double order() const { return order_; }

 private:
  DivergenceValue(double v, bool inf, Kind kind, double order) : value_(v), infinite_(inf), kind_(kind), order_(order) {}
  double value_;
  bool infinite_;
  Kind kind_;
  double order_;
};

std::string_view divergence_kind_name(DivergenceValue::Kind kind);

// Tr[A (I - supp B)] for PSD A, B.
double support_leak(const HermitianOperator& a, const HermitianOperator& b);
bool support_contained(const HermitianOperator& a, const HermitianOperator& b);

// Tr[A^s B^(1-s)] with pseudo-powers; A, B PSD.
double petz_trace(const HermitianOperator& a, const HermitianOperator& b, double s);

// alpha in (0,1) or (1,2].
DivergenceValue petz_renyi(const DensityOperator& rho, const DensityOperator& sigma, double alpha);
DivergenceValue petz_renyi(const HermitianOperator& a, const HermitianOperator& b, double alpha);
DivergenceValue relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);
DivergenceValue relative_entropy(const HermitianOperator& a, const HermitianOperator& b);
// Throws SupportViolation when supp(rho) is not inside supp(sigma).
DivergenceValue relative_entropy_variance(const DensityOperator& rho, const DensityOperator& sigma);
DivergenceValue relative_entropy_variance(const HermitianOperator& a, const HermitianOperator& b);
// log Tr[(B^{-1/4} A B^{-1/4})^2].
DivergenceValue collision_divergence(const HermitianOperator& a, const HermitianOperator& b);
DivergenceValue max_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);
DivergenceValue max_relative_entropy(const HermitianOperator& a, const HermitianOperator& b);

// I_alpha(X:B) = D_alpha(rho_XB || rho_X (x) rho_B), evaluated per block.
DivergenceValue cq_mutual_renyi(const CQState& state, double alpha);
// I(X:B) = sum_x p(x) D(rho^x || rho_B).
double cq_mutual_information(const CQState& state);
// V(rho_XB || rho_X (x) rho_B).
double cq_mutual_information_variance(const CQState& state);
// H_alpha(X|B) = -D_alpha(rho_XB || 1_X (x) rho_B).
double cq_conditional_renyi(const CQState& state, double alpha);

double normal_cdf(double x);
// Throws POutOfRange outside (0,1).
double inverse_normal_cdf(double p);

}  // namespace oneshot

#endif  // ONESHOT_DIVERGENCES_HPP_
