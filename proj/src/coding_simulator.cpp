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

#include "oneshot/coding_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "oneshot/coding_bounds.hpp"
#include "oneshot/discrimination.hpp"
#include "oneshot/error.hpp"
#include "oneshot/random.hpp"

namespace oneshot {
namespace {

// Fills out[0..k) with the errors of one codebook.
using Evaluator = std::function<void(const std::vector<int>& codebook, double* out)>;

// Independent draws, one distribution per codebook position.
using Ensemble = std::vector<std::vector<double>>;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(long long n, int threads, const std::function<void(long long)>& body) {
  const int workers = static_cast<int>(std::min<long long>(std::max(1, threads), std::max(1LL, n)));
  if (workers <= 1) {
    for (long long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  const long long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const long long end = std::min(n, (w + 1) * chunk);
        for (long long i = w * chunk; i < end; ++i) body(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::vector<double> exact_expectation(const Ensemble& ensemble, int outputs, const Evaluator& eval,
                                      const SimulationConfig& config) {
  std::vector<std::vector<int>> support(ensemble.size());
  long long count = 1;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    for (std::size_t s = 0; s < ensemble[i].size(); ++s) {
      if (ensemble[i][s] > 0.0) support[i].push_back(static_cast<int>(s));
    }
    const long long k = static_cast<long long>(support[i].size());
    if (count > config.enumeration_cap / std::max(1LL, k)) {
      std::ostringstream msg;
      msg << "more than " << config.enumeration_cap << " codebooks to enumerate; use Monte Carlo mode";
      throw Error(ErrorCode::kEnumerationTooLarge, msg.str());
    }
    count *= k;
  }
  std::vector<double> terms(static_cast<std::size_t>(count) * outputs, 0.0);
  parallel_for(count, resolve_threads(config.threads), [&](long long index) {
    std::vector<int> codebook(ensemble.size());
    double weight = 1.0;
    long long rest = index;
    for (int i = static_cast<int>(ensemble.size()) - 1; i >= 0; --i) {
      const long long k = static_cast<long long>(support[i].size());
      codebook[i] = support[i][rest % k];
      rest /= k;
      weight *= ensemble[i][codebook[i]];
    }
    double* out = &terms[static_cast<std::size_t>(index) * outputs];
    eval(codebook, out);
    for (int k = 0; k < outputs; ++k) out[k] *= weight;
  });
  std::vector<double> mean(outputs, 0.0);
  for (long long i = 0; i < count; ++i) {
    for (int k = 0; k < outputs; ++k) mean[k] += terms[static_cast<std::size_t>(i) * outputs + k];
  }
  return mean;
}

struct McStats {
  std::vector<double> mean;
  std::vector<double> std_error;
};

McStats monte_carlo(const Ensemble& ensemble, int outputs, const Evaluator& eval, long long trials,
                    std::uint64_t seed, const SimulationConfig& config) {
  if (trials < 1) throw Error(ErrorCode::kDomainError, "trials must be at least 1");
  std::vector<double> samples(static_cast<std::size_t>(trials) * outputs, 0.0);
  parallel_for(trials, resolve_threads(config.threads), [&](long long t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<int> codebook(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) codebook[i] = rng.categorical(ensemble[i]);
    eval(codebook, &samples[static_cast<std::size_t>(t) * outputs]);
  });
  McStats stats{std::vector<double>(outputs, 0.0), std::vector<double>(outputs, 0.0)};
  for (int k = 0; k < outputs; ++k) {
    double sum = 0.0;
    for (long long t = 0; t < trials; ++t) sum += samples[static_cast<std::size_t>(t) * outputs + k];
    const double mean = sum / static_cast<double>(trials);
    double sq = 0.0;
    for (long long t = 0; t < trials; ++t) {
      const double dev = samples[static_cast<std::size_t>(t) * outputs + k] - mean;
      sq += dev * dev;
    }
    stats.mean[k] = mean;
    stats.std_error[k] = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  }
  return stats;
}

void check_messages(long long m, const char* name) {
  if (m < 1) {
    std::ostringstream msg;
    msg << name << " = " << m << " must be at least 1";
    throw Error(ErrorCode::kBadM, msg.str());
  }
}

SimulationResult make_result(const std::string& protocol, double mean, const BoundReport& bound) {
  SimulationResult r;
  r.protocol = protocol;
  r.mean_error = mean;
  r.bound_checked = bound.bound;
  r.certified = certify(mean, bound.bound, 0.0);
  if (bound.strengthened_bound) {
    r.strengthened_bound = bound.strengthened_bound;
    r.strengthened_certified = certify(mean, *bound.strengthened_bound, 0.0);
  }
  return r;
}

SimulationResult make_mc_result(const std::string& protocol, double mean, double std_error, long long trials,
                                std::uint64_t seed, const BoundReport& bound) {
  SimulationResult r = make_result(protocol, mean, bound);
  r.mode = SimulationMode::kMonteCarlo;
  r.trials = trials;
  r.std_error = std_error;
  r.seed = seed;
  r.certified = certify(mean, bound.bound, std_error);
  if (bound.strengthened_bound) r.strengthened_certified = certify(mean, *bound.strengthened_bound, std_error);
  return r;
}

Ensemble repeat(const std::vector<double>& p, long long times) { return Ensemble(static_cast<std::size_t>(times), p); }

Evaluator cq_evaluator(const CQChannel& ch, long long messages) {
  return [&ch, messages](const std::vector<int>& codebook, double* out) {
    std::vector<HermitianOperator> states;
    states.reserve(static_cast<std::size_t>(messages));
    for (int x : codebook) states.push_back(ch.output(x).op() * (1.0 / static_cast<double>(messages)));
    out[0] = pgm_weighted_error(states);
  };
}

Evaluator cqsw_evaluator(const CQState& state, long long messages) {
  return [&state, messages](const std::vector<int>& bins, double* out) {
    double error = 0.0;
    for (long long m = 0; m < messages; ++m) {
      std::vector<HermitianOperator> members;
      for (int x = 0; x < state.size(); ++x) {
        if (bins[x] == m) members.push_back(state.block(x));
      }
      if (!members.empty()) error += pgm_weighted_error(members);
    }
    out[0] = error;
  };
}

Evaluator mac_evaluator(const MacChannel& mac, long long ma, long long mb) {
  return [&mac, ma, mb](const std::vector<int>& codebook, double* out) {
    const double w = 1.0 / static_cast<double>(ma * mb);
    std::vector<HermitianOperator> states;
    for (long long a = 0; a < ma; ++a) {
      for (long long b = 0; b < mb; ++b) states.push_back(mac.outputs[codebook[a]][codebook[ma + b]].op() * w);
    }
    out[0] = pgm_weighted_error(states);
  };
}

struct BroadcastMarginals {
  std::vector<HermitianOperator> b;  // Tr_C rho^x
  std::vector<HermitianOperator> c;  // Tr_B rho^x
};

BroadcastMarginals broadcast_marginals(const BroadcastModel& model) {
  const SubsystemShape shape{model.dim_b, model.dim_c};
  BroadcastMarginals m;
  for (const auto& out : model.channel.outputs()) {
    m.b.push_back(partial_trace(out.op(), shape, {0}));
    m.c.push_back(partial_trace(out.op(), shape, {1}));
  }
  return m;
}

// Each receiver decodes against its states averaged over the other codebook.
Evaluator broadcast_evaluator(const BroadcastModel& model, const BroadcastMarginals& marg, long long mb,
                              long long mc) {
  return [&model, &marg, mb, mc](const std::vector<int>& codebook, double* out) {
    const double w = 1.0 / static_cast<double>(mb * mc);
    std::vector<HermitianOperator> bob(static_cast<std::size_t>(mb), HermitianOperator::zero(model.dim_b));
    std::vector<HermitianOperator> charlie(static_cast<std::size_t>(mc), HermitianOperator::zero(model.dim_c));
    for (long long i = 0; i < mb; ++i) {
      for (long long j = 0; j < mc; ++j) {
        const int x = model.map[codebook[i]][codebook[mb + j]];
        bob[i] = bob[i] + marg.b[x] * w;
        charlie[j] = charlie[j] + marg.c[x] * w;
      }
    }
    out[0] = pgm_weighted_error(bob);
    out[1] = pgm_weighted_error(charlie);
  };
}

Ensemble two_sided(const std::vector<double>& p, long long m, const std::vector<double>& q, long long n) {
  Ensemble e = repeat(p, m);
  for (long long i = 0; i < n; ++i) e.push_back(q);
  return e;
}

}  // namespace

bool certify(double mean, double bound, double std_error) { return mean <= bound + 3.0 * std_error + 1e-9; }

double codebook_error(const CQChannel& ch, const Codebook& codebook) {
  if (codebook.entries.empty()) throw Error(ErrorCode::kBadM, "codebook is empty");
  for (int x : codebook.entries) {
    if (x < 0 || x >= ch.size()) throw Error(ErrorCode::kValidationError, "codebook symbol out of range");
  }
  double out = 0.0;
  cq_evaluator(ch, static_cast<long long>(codebook.entries.size()))(codebook.entries, &out);
  return out;
}

SimulationResult cq_random_coding_exact(const CQChannel& ch, long long messages, const SimulationConfig& config) {
  check_messages(messages, "M");
  const double mean = exact_expectation(repeat(ch.prior(), messages), 1, cq_evaluator(ch, messages), config)[0];
  return make_result("cq", mean, cq_bound(ch, messages));
}

SimulationResult cq_random_coding_mc(const CQChannel& ch, long long messages, long long trials, std::uint64_t seed,
                                     const SimulationConfig& config) {
  check_messages(messages, "M");
  const McStats s = monte_carlo(repeat(ch.prior(), messages), 1, cq_evaluator(ch, messages), trials, seed, config);
  return make_mc_result("cq", s.mean[0], s.std_error[0], trials, seed, cq_bound(ch, messages));
}

SimulationResult packing_exact(const DensityOperator& rho_rb, const SubsystemShape& shape,
                               const DensityOperator& tau_r, long long messages, const SimulationConfig& config) {
  check_messages(messages, "M");
  const BoundReport bound = packing_bound(rho_rb, shape, tau_r, messages);
  const int dr = shape.dim(0), db = shape.dim(1);
  long long total = db;
  for (long long m = 0; m < messages; ++m) {
    if (total > config.dimension_cap / dr) {
      std::ostringstream msg;
      msg << "d_R^M d_B exceeds the dimension cap " << config.dimension_cap;
      throw Error(ErrorCode::kDimensionTooLarge, msg.str());
    }
    total *= dr;
  }
  const int slots = static_cast<int>(messages);
  // Input factors: (R_m, B, R copies...); output factors: (R_1 .. R_M, B).
  std::vector<HermitianOperator> factors{rho_rb.op()};
  for (int k = 1; k < slots; ++k) factors.push_back(tau_r.op());
  const HermitianOperator base = tensor_product(factors);
  std::vector<int> in_dims{dr, db};
  for (int k = 1; k < slots; ++k) in_dims.push_back(dr);
  const SubsystemShape in_shape(in_dims);
  const double w = 1.0 / static_cast<double>(messages);
  std::vector<HermitianOperator> states;
  for (int m = 0; m < slots; ++m) {
    std::vector<int> order;
    for (int j = 0; j < slots; ++j) order.push_back(j == m ? 0 : (j < m ? 2 + j : 1 + j));
    order.push_back(1);
    states.push_back(permute_factors(base, in_shape, order) * w);
  }
  const std::vector<double> errors = pgm_message_errors(states);
  double mean = 0.0;
  for (double e : errors) {
    if (std::abs(e - errors.front()) > 1e-9) {
      throw Error(ErrorCode::kNumericalFailure, "position-based per-message errors are not symmetric");
    }
    mean += e;
  }
  return make_result("packing", mean, bound);
}

SimulationResult cqsw_exact(const CQState& state, long long messages, const SimulationConfig& config) {
  check_messages(messages, "M");
  const BoundReport bound = cqsw_bound(state, messages);
  const std::vector<double> uniform(static_cast<std::size_t>(messages), 1.0 / static_cast<double>(messages));
  const double mean = exact_expectation(repeat(uniform, state.size()), 1, cqsw_evaluator(state, messages), config)[0];
  return make_result("cqsw", mean, bound);
}

SimulationResult cqsw_mc(const CQState& state, long long messages, long long trials, std::uint64_t seed,
                         const SimulationConfig& config) {
  check_messages(messages, "M");
  const BoundReport bound = cqsw_bound(state, messages);
  const std::vector<double> uniform(static_cast<std::size_t>(messages), 1.0 / static_cast<double>(messages));
  const McStats s = monte_carlo(repeat(uniform, state.size()), 1, cqsw_evaluator(state, messages), trials, seed, config);
  return make_mc_result("cqsw", s.mean[0], s.std_error[0], trials, seed, bound);
}

SimulationResult mac_exact(const MacChannel& mac, long long messages_a, long long messages_b,
                           const SimulationConfig& config) {
  const BoundReport bound = mac_bound(mac, messages_a, messages_b);
  const double mean = exact_expectation(two_sided(mac.px, messages_a, mac.py, messages_b), 1,
                                        mac_evaluator(mac, messages_a, messages_b), config)[0];
  return make_result("mac", mean, bound);
}

SimulationResult mac_mc(const MacChannel& mac, long long messages_a, long long messages_b, long long trials,
                        std::uint64_t seed, const SimulationConfig& config) {
  const BoundReport bound = mac_bound(mac, messages_a, messages_b);
  const McStats s = monte_carlo(two_sided(mac.px, messages_a, mac.py, messages_b), 1,
                                mac_evaluator(mac, messages_a, messages_b), trials, seed, config);
  return make_mc_result("mac", s.mean[0], s.std_error[0], trials, seed, bound);
}

std::pair<SimulationResult, SimulationResult> broadcast_exact(const BroadcastModel& model, long long messages_b,
                                                              long long messages_c, const SimulationConfig& config) {
  const auto [bound_b, bound_c] = broadcast_bounds(model, messages_b, messages_c);
  const BroadcastMarginals marg = broadcast_marginals(model);
  const std::vector<double> mean =
      exact_expectation(two_sided(model.pu, messages_b, model.pv, messages_c), 2,
                        broadcast_evaluator(model, marg, messages_b, messages_c), config);
  return {make_result("broadcast_b", mean[0], bound_b), make_result("broadcast_c", mean[1], bound_c)};
}

std::pair<SimulationResult, SimulationResult> broadcast_mc(const BroadcastModel& model, long long messages_b,
                                                           long long messages_c, long long trials, std::uint64_t seed,
                                                           const SimulationConfig& config) {
  const auto [bound_b, bound_c] = broadcast_bounds(model, messages_b, messages_c);
  const BroadcastMarginals marg = broadcast_marginals(model);
  const McStats s = monte_carlo(two_sided(model.pu, messages_b, model.pv, messages_c), 2,
                                broadcast_evaluator(model, marg, messages_b, messages_c), trials, seed, config);
  return {make_mc_result("broadcast_b", s.mean[0], s.std_error[0], trials, seed, bound_b),
          make_mc_result("broadcast_c", s.mean[1], s.std_error[1], trials, seed, bound_c)};
}

SimulationResult state_info_exact(const StateInfoModel& model, long long messages, const SimulationConfig& config) {
  const CQChannel induced = model.induced_channel();
  SimulationResult r = cq_random_coding_exact(induced, messages, config);
  r.protocol = "state_info";
  r.strengthened_bound.reset();
  r.strengthened_certified.reset();
  return r;
}

SimulationResult state_info_mc(const StateInfoModel& model, long long messages, long long trials, std::uint64_t seed,
                               const SimulationConfig& config) {
  const CQChannel induced = model.induced_channel();
  SimulationResult r = cq_random_coding_mc(induced, messages, trials, seed, config);
  r.protocol = "state_info";
  r.strengthened_bound.reset();
  r.strengthened_certified.reset();
  return r;
}

}  // namespace oneshot
