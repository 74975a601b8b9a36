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

#include "oneshot/coding_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oneshot/discrimination.hpp"
#include "oneshot/divergences.hpp"
#include "oneshot/error.hpp"

namespace oneshot {
namespace {

void check_messages(long long m, const char* name) {
  if (m < 1) {
    std::ostringstream msg;
    msg << name << " = " << m << " must be at least 1";
    throw Error(ErrorCode::kBadM, msg.str());
  }
}

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw Error(ErrorCode::kDomainError, "rate must be positive");
}

void require_shape(const SubsystemShape& shape, int factors, int dim, const char* what) {
  if (shape.factors() != factors) {
    std::ostringstream msg;
    msg << what << ": expected " << factors << " factors, got " << shape.factors();
    throw Error(ErrorCode::kShapeMismatch, msg.str());
  }
  shape.require_dim(dim, what);
}

void check_product_marginal(const HermitianOperator& joint, const HermitianOperator& a, const HermitianOperator& b,
                            const char* what) {
  const double dev = frobenius_distance(joint, tensor_product(a, b));
  if (!(dev <= kMarginalTolerance)) {
    std::ostringstream msg;
    msg << what << " is not a product (Frobenius deviation " << dev << ")";
    throw Error(ErrorCode::kMarginalConstraintViolated, msg.str());
  }
}

ExponentReport best_of(double rate, std::vector<std::pair<double, double>> grid, double reference) {
  ExponentReport report;
  report.rate = rate;
  report.reference_information = reference;
  report.best_alpha = grid.front().first;
  report.exponent = grid.front().second;
  for (const auto& [alpha, value] : grid) {
    if (value > report.exponent) {
      report.exponent = value;
      report.best_alpha = alpha;
    }
  }
  report.grid = std::move(grid);
  return report;
}

}  // namespace

std::vector<double> AlphaGrid::points() const {
  if (steps < 1 || !(lo > 0.5) || !(hi < 1.0) || !(lo <= hi)) {
    throw Error(ErrorCode::kGridEmpty, "alpha grid must have at least one point inside (1/2, 1)");
  }
  std::vector<double> out;
  out.reserve(steps);
  if (steps == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
  return out;
}

BoundReport cq_bound(const CQChannel& ch, long long messages) {
  check_messages(messages, "M");
  const HermitianOperator rho_b = ch.average_output();
  const HermitianOperator rival = rho_b * static_cast<double>(messages - 1);
  double bound = 0.0;
  double dmax = -std::numeric_limits<double>::infinity();
  for (int x = 0; x < ch.size(); ++x) {
    const double p = ch.prior()[x];
    if (p <= 0.0) continue;
    bound += p * nc_min_trace(ch.output(x).op(), rival);
    dmax = std::max(dmax, max_relative_entropy(ch.output(x).op(), rho_b).as_double());
  }
  BoundReport r;
  r.protocol = "cq";
  r.bound = bound;
  r.strengthened_bound = (1.0 - bound / static_cast<double>(messages)) * bound;
  const double log_m1 = messages > 1 ? std::log(static_cast<double>(messages - 1)) : -std::numeric_limits<double>::infinity();
  r.components["max_relative_entropy"] = dmax;
  r.components["log_messages_minus_one"] = log_m1;
  r.flags["trivial"] = log_m1 >= dmax;
  return r;
}

ExponentReport cq_exponent(const CQChannel& ch, double rate, const AlphaGrid& grid) {
  check_rate(rate);
  const CQState state = build_cq_joint(ch);
  std::vector<std::pair<double, double>> points;
  for (double alpha : grid.points()) {
    const double info = cq_mutual_renyi(state, 2.0 - 1.0 / alpha).value();
    points.emplace_back(alpha, (1.0 - alpha) / alpha * (info - rate));
  }
  return best_of(rate, std::move(points), cq_mutual_information(state));
}

double cq_relaxation_bound(const CQChannel& ch, long long messages, const AlphaGrid& grid) {
  check_messages(messages, "M");
  if (messages == 1) return 0.0;
  const CQState state = build_cq_joint(ch);
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : grid.points()) {
    const double s = (1.0 - alpha) / alpha;
    const double info = cq_mutual_renyi(state, 2.0 - 1.0 / alpha).value();
    best = std::min(best, std::exp(s * (std::log(static_cast<double>(messages - 1)) - info)));
  }
  return best;
}

RateReport cq_rate(const CQChannel& ch, double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::kEpsOutOfRange, "eps must lie in (0,1)");
  if (!(delta > 0.0 && delta < eps)) throw Error(ErrorCode::kDeltaOutOfRange, "delta must lie in (0, eps)");
  const CQState state = build_cq_joint(ch);
  const DensityOperator joint(state.joint_matrix());
  const DensityOperator product(state.product_of_marginals());
  const double dh = ht_divergence(joint, product, eps - delta).as_double();
  const double ds = is_divergence(joint, product, eps - delta).as_double();
  return {dh - std::log(1.0 / delta), dh - std::log(4.0 / (delta * delta)), ds - std::log((1.0 - eps) / delta), dh,
          ds};
}

double second_order_rate(double information, double variance, double eps, long long n) {
  if (n < 1) throw Error(ErrorCode::kDomainError, "n must be at least 1");
  if (variance < 0.0) throw Error(ErrorCode::kDomainError, "variance must be nonnegative");
  const double nn = static_cast<double>(n);
  return nn * information + std::sqrt(nn * variance) * inverse_normal_cdf(eps) - 0.5 * std::log(nn);
}

BoundReport packing_bound(const DensityOperator& rho_rb, const SubsystemShape& shape, const DensityOperator& tau_r,
                          long long messages) {
  check_messages(messages, "M");
  require_shape(shape, 2, rho_rb.dim(), "packing_bound");
  if (tau_r.dim() != shape.dim(0)) throw Error(ErrorCode::kShapeMismatch, "tau_R does not match the R factor");
  const HermitianOperator rho_b = partial_trace(rho_rb.op(), shape, {1});
  const HermitianOperator rival = tensor_product(tau_r.op(), rho_b) * static_cast<double>(messages - 1);
  BoundReport r;
  r.protocol = "packing";
  r.bound = nc_min_trace(rho_rb.op(), rival);
  return r;
}

BoundReport ea_bound(const KrausChannel& ch, const DensityOperator& theta_ra, const SubsystemShape& shape,
                     long long messages) {
  require_shape(shape, 2, theta_ra.dim(), "ea_bound");
  const DensityOperator rho_rb(ch.apply(theta_ra.op(), shape, 1));
  const DensityOperator theta_r(partial_trace(theta_ra.op(), shape, {0}));
  BoundReport r = packing_bound(rho_rb, SubsystemShape{shape.dim(0), ch.out_dim()}, theta_r, messages);
  r.protocol = "ea";
  return r;
}

BoundReport cqsw_bound(const CQState& state, long long messages) {
  check_messages(messages, "M");
  const HermitianOperator rival = state.marginal_b() * (1.0 / static_cast<double>(messages));
  double bound = 0.0;
  for (int x = 0; x < state.size(); ++x) {
    if (!(state.prior(x) > 0.0)) {
      throw Error(ErrorCode::kValidationError, "source symbol '" + state.labels()[x] + "' has zero probability");
    }
    bound += nc_min_trace(state.block(x), rival);
  }
  BoundReport r;
  r.protocol = "cqsw";
  r.bound = bound;
  return r;
}

ExponentReport cq_exponent_cqsw(const CQState& state, double rate, const AlphaGrid& grid) {
  check_rate(rate);
  std::vector<std::pair<double, double>> points;
  for (double alpha : grid.points()) {
    const double h = cq_conditional_renyi(state, 2.0 - 1.0 / alpha);
    points.emplace_back(alpha, (1.0 - alpha) / alpha * (rate - h));
  }
  // H(X|B) = H(X) - I(X:B).
  double hx = 0.0;
  for (double p : state.prior()) {
    if (p > 0.0) hx -= p * std::log(p);
  }
  return best_of(rate, std::move(points), hx - cq_mutual_information(state));
}

BoundReport mac_bound(const MacChannel& mac, long long messages_a, long long messages_b) {
  check_messages(messages_a, "M_A");
  check_messages(messages_b, "M_B");
  const int nx = static_cast<int>(mac.px.size());
  const int ny = static_cast<int>(mac.py.size());
  const int d = mac.dim_c();
  // rho^{x.} = sum_y p(y) rho^{xy}, rho^{.y} = sum_x p(x) rho^{xy}.
  std::vector<HermitianOperator> avg_over_y(nx, HermitianOperator::zero(d));
  std::vector<HermitianOperator> avg_over_x(ny, HermitianOperator::zero(d));
  HermitianOperator rho_c = HermitianOperator::zero(d);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      const HermitianOperator& r = mac.outputs[x][y].op();
      avg_over_y[x] = avg_over_y[x] + r * mac.py[y];
      avg_over_x[y] = avg_over_x[y] + r * mac.px[x];
      rho_c = rho_c + r * (mac.px[x] * mac.py[y]);
    }
  }
  const double ma = static_cast<double>(messages_a - 1);
  const double mb = static_cast<double>(messages_b - 1);
  double bound = 0.0;
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      const double p = mac.px[x] * mac.py[y];
      if (p <= 0.0) continue;
      const HermitianOperator rival = avg_over_x[y] * ma + avg_over_y[x] * mb + rho_c * (ma * mb);
      bound += p * nc_min_trace(mac.outputs[x][y].op(), rival);
    }
  }
  BoundReport r;
  r.protocol = "mac";
  r.bound = bound;
  return r;
}

std::pair<BoundReport, BoundReport> broadcast_bounds(const BroadcastModel& model, long long messages_b,
                                                     long long messages_c) {
  BoundReport b = cq_bound(model.receiver_b_channel(), messages_b);
  BoundReport c = cq_bound(model.receiver_c_channel(), messages_c);
  b.protocol = "broadcast_b";
  c.protocol = "broadcast_c";
  return {b, c};
}

BoundReport state_info_bound(const StateInfoModel& model, long long messages) {
  BoundReport r = cq_bound(model.induced_channel(), messages);
  r.protocol = "state_info";
  return r;
}

BoundReport ea_mac_bound(const KrausChannel& ch, const DensityOperator& theta_a, const SubsystemShape& shape_a,
                         const DensityOperator& theta_b, const SubsystemShape& shape_b, long long messages_a,
                         long long messages_b) {
  check_messages(messages_a, "M_A");
  check_messages(messages_b, "M_B");
  require_shape(shape_a, 2, theta_a.dim(), "ea_mac theta_A");
  require_shape(shape_b, 2, theta_b.dim(), "ea_mac theta_B");
  const int dra = shape_a.dim(0), da = shape_a.dim(1);
  const int drb = shape_b.dim(0), db = shape_b.dim(1);
  if (ch.in_dim() != da * db) throw Error(ErrorCode::kShapeMismatch, "channel input dim is not d_A d_B");
  const int dc = ch.out_dim();
  // (RA, A, RB, B) -> (RA, RB, A, B), then N on the merged A B factor.
  const HermitianOperator joint =
      permute_factors(tensor_product(theta_a.op(), theta_b.op()), SubsystemShape{dra, da, drb, db}, {0, 2, 1, 3});
  const HermitianOperator rho = ch.apply(joint, SubsystemShape{dra, drb, da * db}, 2);
  const SubsystemShape out{dra, drb, dc};
  const HermitianOperator rho_ra = partial_trace(rho, out, {0});
  const HermitianOperator rho_rb = partial_trace(rho, out, {1});
  const HermitianOperator rho_c = partial_trace(rho, out, {2});
  const HermitianOperator rho_rbc = partial_trace(rho, out, {1, 2});
  const HermitianOperator rho_rac = partial_trace(rho, out, {0, 2});
  const double ma = static_cast<double>(messages_a - 1);
  const double mb = static_cast<double>(messages_b - 1);
  const HermitianOperator term_a = tensor_product(rho_ra, rho_rbc);
  // rho_RB (x) rho_RAC is ordered (RB, RA, C).
  const HermitianOperator term_b =
      permute_factors(tensor_product(rho_rb, rho_rac), SubsystemShape{drb, dra, dc}, {1, 0, 2});
  const std::vector<HermitianOperator> parts{rho_ra, rho_rb, rho_c};
  const HermitianOperator term_ab = tensor_product(parts);
  BoundReport r;
  r.protocol = "ea_mac";
  r.bound = nc_min_trace(rho, term_a * ma + term_b * mb + term_ab * (ma * mb));
  return r;
}

std::pair<BoundReport, BoundReport> ea_broadcast_bounds(const KrausChannel& ch, const DensityOperator& theta,
                                                        const SubsystemShape& shape, int dim_b, int dim_c,
                                                        long long messages_b, long long messages_c) {
  require_shape(shape, 3, theta.dim(), "ea_broadcast theta");
  if (ch.out_dim() != dim_b * dim_c) throw Error(ErrorCode::kShapeMismatch, "channel output dim is not d_B d_C");
  const int drb = shape.dim(0), drc = shape.dim(1);
  const HermitianOperator theta_rbrc = partial_trace(theta.op(), shape, {0, 1});
  const HermitianOperator theta_rb = partial_trace(theta.op(), shape, {0});
  const HermitianOperator theta_rc = partial_trace(theta.op(), shape, {1});
  check_product_marginal(theta_rbrc, theta_rb, theta_rc, "theta_{RB RC}");
  const HermitianOperator rho = ch.apply(theta.op(), shape, 2);
  const SubsystemShape out{drb, drc, dim_b, dim_c};
  const DensityOperator rho_rb_b(partial_trace(rho, out, {0, 2}));
  const DensityOperator rho_rc_c(partial_trace(rho, out, {1, 3}));
  BoundReport b = packing_bound(rho_rb_b, SubsystemShape{drb, dim_b}, DensityOperator(theta_rb), messages_b);
  BoundReport c = packing_bound(rho_rc_c, SubsystemShape{drc, dim_c}, DensityOperator(theta_rc), messages_c);
  b.protocol = "ea_broadcast_b";
  c.protocol = "ea_broadcast_c";
  return {b, c};
}

BoundReport ea_state_info_bound(const KrausChannel& ch, const DensityOperator& theta, const SubsystemShape& shape,
                                long long messages) {
  require_shape(shape, 3, theta.dim(), "ea_state_info theta");
  const int dr = shape.dim(0), da = shape.dim(1), ds = shape.dim(2);
  if (ch.in_dim() != da * ds) throw Error(ErrorCode::kShapeMismatch, "channel input dim is not d_A d_S");
  const HermitianOperator theta_r = partial_trace(theta.op(), shape, {0});
  check_product_marginal(partial_trace(theta.op(), shape, {0, 2}), theta_r, partial_trace(theta.op(), shape, {2}),
                         "theta_RS");
  const DensityOperator rho_rb(ch.apply(theta.op(), SubsystemShape{dr, da * ds}, 1));
  BoundReport r = packing_bound(rho_rb, SubsystemShape{dr, ch.out_dim()}, DensityOperator(theta_r), messages);
  r.protocol = "ea_state_info";
  return r;
}

}  // namespace oneshot
