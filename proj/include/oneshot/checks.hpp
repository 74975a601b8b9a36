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

#ifndef ONESHOT_CHECKS_HPP_
#define ONESHOT_CHECKS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace oneshot {

// Worst margin of one property over a battery; margins are oriented so that
// the property holds iff margin >= -tolerance.
struct PropertyMargin {
  std::string property;
  double worst = 0.0;
  double tolerance = 0.0;
  long long cases = 0;
  bool passed() const { return worst >= -tolerance; }
};

struct CheckReport {
  std::string battery;
  std::vector<PropertyMargin> properties;
  bool passed() const;
};

struct CheckOptions {
  long long trials = 500;  // per dimension
  std::vector<int> dims{2, 3, 4, 6};
  std::uint64_t seed = 1;
};

// Monotonicity, data processing, concavity, direct sums, Chernoff and
// Barnum-Knill bounds for Tr[A ^ B], plus the min/max identity and a random
// test spot check of the Helstrom minimum.
CheckReport run_fact_checks(const CheckOptions& options);
// (1+c)(I-A) + (2+c+1/c)B >= I - A/(A+B) for c in {0.1, 1, 10}.
CheckReport run_hn_checks(const CheckOptions& options);
// Tr[A B/(A+B)] <= Tr[A v B] Tr[A ^ B] / Tr[A+B] <= Tr[A ^ B], with every
// other pair rank-deficient; also the collision data-processing step.
CheckReport run_trace_chain_checks(const CheckOptions& options);

}  // namespace oneshot

#endif  // ONESHOT_CHECKS_HPP_
