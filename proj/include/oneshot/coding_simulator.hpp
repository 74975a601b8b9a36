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

#ifndef ONESHOT_CODING_SIMULATOR_HPP_
#define ONESHOT_CODING_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oneshot/quantum_model.hpp"

namespace oneshot {

struct SimulationConfig {
  long long enumeration_cap = 4096;  // codebooks (or bin assignments) enumerated exactly
  long long dimension_cap = 64;      // packing: d_R^M d_B
  int threads = 0;                   // 0: all cores
};

enum class SimulationMode { kExact, kMonteCarlo };

struct SimulationResult {
  std::string protocol;
  double mean_error = 0.0;
  SimulationMode mode = SimulationMode::kExact;
  long long trials = 0;
  double std_error = 0.0;
  std::optional<std::uint64_t> seed;
  double bound_checked = 0.0;
  bool certified = false;
  std::optional<double> strengthened_bound;
  std::optional<bool> strengthened_certified;
};

// mean <= bound + 3 std_error + 1e-9.
bool certify(double mean, double bound, double std_error);

// Message m is sent as symbol entries[m].
struct Codebook {
  std::vector<int> entries;
};

// PGM decoding error of one codebook, averaged over uniform messages.
double codebook_error(const CQChannel& ch, const Codebook& codebook);

SimulationResult cq_random_coding_exact(const CQChannel& ch, long long messages, const SimulationConfig& config = {});
SimulationResult cq_random_coding_mc(const CQChannel& ch, long long messages, long long trials, std::uint64_t seed,
                                     const SimulationConfig& config = {});

// Position-based coding over R^M (x) B; shape = (d_R, d_B).
SimulationResult packing_exact(const DensityOperator& rho_rb, const SubsystemShape& shape,
                               const DensityOperator& tau_r, long long messages, const SimulationConfig& config = {});

SimulationResult cqsw_exact(const CQState& state, long long messages, const SimulationConfig& config = {});
SimulationResult cqsw_mc(const CQState& state, long long messages, long long trials, std::uint64_t seed,
                         const SimulationConfig& config = {});

SimulationResult mac_exact(const MacChannel& mac, long long messages_a, long long messages_b,
                           const SimulationConfig& config = {});
SimulationResult mac_mc(const MacChannel& mac, long long messages_a, long long messages_b, long long trials,
                        std::uint64_t seed, const SimulationConfig& config = {});

// (receiver B, receiver C).
std::pair<SimulationResult, SimulationResult> broadcast_exact(const BroadcastModel& model, long long messages_b,
                                                              long long messages_c, const SimulationConfig& config = {});
std::pair<SimulationResult, SimulationResult> broadcast_mc(const BroadcastModel& model, long long messages_b,
                                                           long long messages_c, long long trials, std::uint64_t seed,
                                                           const SimulationConfig& config = {});

SimulationResult state_info_exact(const StateInfoModel& model, long long messages, const SimulationConfig& config = {});
SimulationResult state_info_mc(const StateInfoModel& model, long long messages, long long trials, std::uint64_t seed,
                               const SimulationConfig& config = {});

}  // namespace oneshot

#endif  // ONESHOT_CODING_SIMULATOR_HPP_
