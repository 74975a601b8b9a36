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

#ifndef ONESHOT_CODING_BOUNDS_HPP_
#define ONESHOT_CODING_BOUNDS_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oneshot/quantum_model.hpp"

namespace oneshot {

struct BoundReport {
  std::string protocol;
  double bound = 0.0;  // raw, never clamped
  std::optional<double> strengthened_bound;
  std::map<std::string, double> components;
  std::map<std::string, bool> flags;  // "trivial" where defined
  std::string inputs_digest;

  double effective() const { return bound < 1.0 ? bound : 1.0; }
};

// Closed grid over (1/2, 1); points are evenly spaced and include both ends.
struct AlphaGrid {
  double lo = 0.501;
  double hi = 0.999;
  int steps = 99;

  std::vector<double> points() const;
};

struct ExponentReport {
  double rate = 0.0;
  std::vector<std::pair<double, double>> grid;  // (alpha, integrand)
  double best_alpha = 0.0;
  double exponent = 0.0;
  // I(X:B) for cq_exponent, H(X|B) for cq_exponent_cqsw.
  double reference_information = 0.0;
};

// Sum_x p(x) Tr[rho^x ^ (M-1) rho_B]; strengthened = (1 - bound/M) bound.
BoundReport cq_bound(const CQChannel& ch, long long messages);

// Integrand (1-a)/a (I_{2-1/a}(X:B) - R) over the grid.
ExponentReport cq_exponent(const CQChannel& ch, double rate, const AlphaGrid& grid = {});

// min over the grid of (M-1)^s exp(-s I_{2-1/a}), s = (1-a)/a. Upper-bounds cq_bound.
double cq_relaxation_bound(const CQChannel& ch, long long messages, const AlphaGrid& grid = {});

struct RateReport {
  double ours;
  double hayashi_nagaoka;
  double beigi_gohari;
  double dh;  // D_h^{eps-delta}(rho_XB || rho_X (x) rho_B)
  double ds;  // D_s^{eps-delta}
};
RateReport cq_rate(const CQChannel& ch, double eps, double delta);

// n I + sqrt(n V) Phi^{-1}(eps) - log(n)/2, without the O(1) term.
double second_order_rate(double information, double variance, double eps, long long n);

// Tr[rho_RB ^ (M-1) tau_R (x) rho_B]; shape = (d_R, d_B).
BoundReport packing_bound(const DensityOperator& rho_rb, const SubsystemShape& shape, const DensityOperator& tau_r,
                          long long messages);

// packing_bound of (id (x) N)(theta_RA) with tau = theta_R; shape = (d_R, d_A).
BoundReport ea_bound(const KrausChannel& ch, const DensityOperator& theta_ra, const SubsystemShape& shape,
                     long long messages);

// Sum_x Tr[p(x) rho^x ^ rho_B / M]. Every symbol needs positive mass.
BoundReport cqsw_bound(const CQState& state, long long messages);

// Integrand (1-a)/a (R - H_{2-1/a}(X|B)).
ExponentReport cq_exponent_cqsw(const CQState& state, double rate, const AlphaGrid& grid = {});

BoundReport mac_bound(const MacChannel& mac, long long messages_a, long long messages_b);

// (eps_B, eps_C).
std::pair<BoundReport, BoundReport> broadcast_bounds(const BroadcastModel& model, long long messages_b,
                                                     long long messages_c);

BoundReport state_info_bound(const StateInfoModel& model, long long messages);

inline constexpr double kMarginalTolerance = 1e-8;

// N acts on A (x) B; theta shapes are (d_RA, d_A) and (d_RB, d_B).
BoundReport ea_mac_bound(const KrausChannel& ch, const DensityOperator& theta_a, const SubsystemShape& shape_a,
                         const DensityOperator& theta_b, const SubsystemShape& shape_b, long long messages_a,
                         long long messages_b);

// N: A -> B (x) C with output shape (d_B, d_C); theta shape (d_RB, d_RC, d_A)
// with theta_{RB RC} = theta_RB (x) theta_RC.
std::pair<BoundReport, BoundReport> ea_broadcast_bounds(const KrausChannel& ch, const DensityOperator& theta,
                                                        const SubsystemShape& shape, int dim_b, int dim_c,
                                                        long long messages_b, long long messages_c);

// N: A (x) S -> B; theta shape (d_R, d_A, d_S) with theta_RS = theta_R (x) theta_S.
BoundReport ea_state_info_bound(const KrausChannel& ch, const DensityOperator& theta, const SubsystemShape& shape,
                                long long messages);

}  // namespace oneshot

#endif  // ONESHOT_CODING_BOUNDS_HPP_
