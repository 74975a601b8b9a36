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

#ifndef ONESHOT_DISCRIMINATION_HPP_
#define ONESHOT_DISCRIMINATION_HPP_

#include <span>
#include <vector>

#include "oneshot/divergences.hpp"
#include "oneshot/operator_core.hpp"
#include "oneshot/quantum_model.hpp"

namespace oneshot {

inline constexpr double kDefaultBisectTol = 1e-10;
inline constexpr int kBisectIterationCap = 200;

// 0 <= T <= I. Eigenvalues within 1e-9 outside [0,1] are clipped.
class TwoOutcomeTest {
 public:
  explicit TwoOutcomeTest(const HermitianOperator& t);

  const HermitianOperator& op() const { return t_; }
  HermitianOperator complement() const { return HermitianOperator::identity(t_.dim()) - t_; }

 private:
  HermitianOperator t_;
};

enum class CompletionPolicy {
  // I - supp(sum of states) is added to element 0.
  kComplementToFirst,
};

struct POVM {
  std::vector<HermitianOperator> elements;
  CompletionPolicy completion = CompletionPolicy::kComplementToFirst;
  HermitianOperator gram_support;
};

struct HelstromResult {
  double error;
  TwoOutcomeTest optimal_test;  // projector onto {A - B > 0}
};

// Minimum of Tr[A(I - T)] + Tr[B T].
HelstromResult helstrom(const HermitianOperator& a, const HermitianOperator& b);

POVM pgm(std::span<const HermitianOperator> states);
// sum_m Tr[state_m (I - Pi_m)]; the states carry their weights and must sum to unit trace.
double pgm_error(std::span<const HermitianOperator> states);
// As pgm_error without the normalization check.
double pgm_weighted_error(std::span<const HermitianOperator> states);
// Tr[state_m (I - Pi_m)] for each m.
std::vector<double> pgm_message_errors(std::span<const HermitianOperator> states);

struct NPResult {
  double mu;
  TwoOutcomeTest test;
  double type1;  // Tr[rho (I - T)]
  double type2;  // Tr[sigma T]
  bool orthogonal;  // I - supp(sigma) alone meets the constraint: type2 is exactly 0
};

// Minimizes Tr[sigma T] subject to Tr[rho (I - T)] <= eps.
NPResult neyman_pearson(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                        double bisect_tol = kDefaultBisectTol);

DivergenceValue ht_divergence(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                              double bisect_tol = kDefaultBisectTol);
// sup{gamma : Tr[rho {rho <= e^gamma sigma}] <= eps}.
DivergenceValue is_divergence(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                              double bisect_tol = kDefaultBisectTol);

// Smallest eigenvalue of (1+c)(I-A) + (2+c+1/c)B - (I - A/(A+B)).
double check_hn_inequality(const HermitianOperator& a, const HermitianOperator& b, double c);

struct TraceChain {
  double lhs;  // Tr[A B/(A+B)]
  double mid;  // Tr[A v B] Tr[A ^ B] / Tr[A + B]
  double rhs;  // Tr[A ^ B]
};
TraceChain check_trace_chain(const HermitianOperator& a, const HermitianOperator& b);

// exp D2*(A+B ... ) before and after the measure-and-prepare map built from the
// Helstrom test; data processing says before >= after.
struct CollisionStep {
  double before;
  double after;
};
CollisionStep check_collision_step(const HermitianOperator& a, const HermitianOperator& b);

struct HoeffdingResult {
  double mu;
  DivergenceValue divergence;  // D_order(rho || sigma)
  double type1_bound;
  double type2_bound;
  double type1_actual;
  double type2_actual;
};
HoeffdingResult hoeffding_pgm(const DensityOperator& rho, const DensityOperator& sigma, double order, double r);

// PGM {rho/(rho+mu sigma), mu sigma/(rho+mu sigma)} evaluated exactly. The
// complement of supp(rho + mu sigma) goes to the second outcome, so mu = 0
// gives the test supp(rho).
struct PgmTestErrors {
  double type1;
  double type2;
};
PgmTestErrors pgm_test_errors(const HermitianOperator& rho, const HermitianOperator& sigma, double mu);

struct SteinResult {
  DivergenceValue dh;  // D_h^{eps - delta}
  double mu;           // delta e^{D_h}
  double type1_actual;
  double type2_actual;
  double type2_bound;  // 1/mu
};
SteinResult stein_pgm(const DensityOperator& rho, const DensityOperator& sigma, double eps, double delta);

}  // namespace oneshot

#endif  // ONESHOT_DISCRIMINATION_HPP_
