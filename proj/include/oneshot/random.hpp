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

#ifndef ONESHOT_RANDOM_HPP_
#define ONESHOT_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "oneshot/quantum_model.hpp"

namespace oneshot {

std::uint64_t splitmix64(std::uint64_t x);

// Stream `stream` of a counter-based generator keyed by `seed`. Draws depend
// only on (seed, stream, draw index), never on scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Index drawn from a probability vector by inversion.
  int categorical(const std::vector<double>& p);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Generators for random test instances.
class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  int integer(int lo, int hi);  // inclusive
  Matrix ginibre(int rows, int cols);
  Matrix unitary(int dim);
  HermitianOperator hermitian(int dim);
  // G G^dagger with G of size dim x rank, scaled to trace `trace`.
  HermitianOperator psd(int dim, int rank, double trace = 1.0);
  // Random rank in [1, dim] when rank <= 0.
  DensityOperator density(int dim, int rank = -1);
  // Spectrum uniform in [0, 1] in a random basis.
  HermitianOperator test(int dim);
  std::vector<double> probability(int n, bool allow_zero = false);
  CQChannel cq_channel(int symbols, int dim_b);
  // Stinespring isometry cut into `kraus_count` blocks.
  KrausChannel kraus_channel(int in_dim, int out_dim, int kraus_count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace oneshot

#endif  // ONESHOT_RANDOM_HPP_
