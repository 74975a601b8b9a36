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

#include "oneshot/checks.hpp"

#include <algorithm>
#include <limits>

#include "oneshot/discrimination.hpp"
#include "oneshot/error.hpp"
#include "oneshot/operator_core.hpp"
#include "oneshot/random.hpp"

namespace oneshot {
namespace {

class Tracker {
 public:
  explicit Tracker(std::string battery) { report_.battery = std::move(battery); }

  void add(const std::string& property, double tolerance) {
    report_.properties.push_back({property, std::numeric_limits<double>::infinity(), tolerance, 0});
  }

  void record(const std::string& property, double margin) {
    for (auto& p : report_.properties) {
      if (p.property == property) {
        p.worst = std::min(p.worst, margin);
        ++p.cases;
        return;
      }
    }
    throw Error(ErrorCode::kNumericalFailure, "unknown property " + property);
  }

  CheckReport finish() {
    for (auto& p : report_.properties) {
      if (p.cases == 0) p.worst = 0.0;
    }
    return report_;
  }

 private:
  CheckReport report_;
};

void validate(const CheckOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::kDomainError, "trials must be at least 1");
  if (options.dims.empty()) throw Error(ErrorCode::kDomainError, "no dimensions given");
  for (int d : options.dims) {
    if (d < 1 || d > 64) throw Error(ErrorCode::kDomainError, "dimension must lie in [1, 64]");
  }
}

std::uint64_t dim_seed(std::uint64_t seed, int dim) { return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(dim))); }

HermitianOperator random_psd(InstanceSampler& s, int dim, bool full_rank = false) {
  const int rank = full_rank ? dim : s.integer(1, dim);
  return s.psd(dim, rank, s.uniform(0.1, 2.0));
}

HermitianOperator measure_computational(const HermitianOperator& a) {
  std::vector<double> diag(a.dim());
  for (int i = 0; i < a.dim(); ++i) diag[i] = a(i, i).real();
  return HermitianOperator::diagonal(diag);
}

// Smallest nontrivial factorization, or none for primes.
int first_factor(int dim) {
  for (int f = 2; f * f <= dim; ++f) {
    if (dim % f == 0) return f;
  }
  return 0;
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyMargin& p) { return p.passed(); });
}

CheckReport run_fact_checks(const CheckOptions& options) {
  validate(options);
  Tracker t("facts");
  t.add("loewner_monotone", 1e-9);
  t.add("ptp_monotone", 1e-9);
  t.add("concavity", 1e-9);
  t.add("direct_sum", 1e-9);
  t.add("chernoff", 1e-9);
  t.add("barnum_knill", 1e-9);
  t.add("min_max_identity", 1e-9);
  t.add("helstrom_spot_check", 1e-9);
  constexpr int kSpotTests = 10;
  for (int d : options.dims) {
    InstanceSampler s(dim_seed(options.seed, d));
    const int split = first_factor(d);
    for (long long trial = 0; trial < options.trials; ++trial) {
      const HermitianOperator a = random_psd(s, d);
      const HermitianOperator b = random_psd(s, d);
      const double base = nc_min_trace(a, b);

      const HermitianOperator a2 = a + random_psd(s, d) * s.uniform(0.0, 1.0);
      const HermitianOperator b2 = b + random_psd(s, d) * s.uniform(0.0, 1.0);
      t.record("loewner_monotone", nc_min_trace(a2, b2) - base);

      t.record("ptp_monotone", nc_min_trace(measure_computational(a), measure_computational(b)) - base);
      if (split != 0) {
        const SubsystemShape shape{split, d / split};
        t.record("ptp_monotone", nc_min_trace(partial_trace(a, shape, {0}), partial_trace(b, shape, {0})) - base);
        t.record("ptp_monotone", nc_min_trace(partial_trace(a, shape, {1}), partial_trace(b, shape, {1})) - base);
      }

      const HermitianOperator c = random_psd(s, d);
      const HermitianOperator e = random_psd(s, d);
      for (double lambda : {0.25, 0.5, 0.75}) {
        const double mixed = nc_min_trace(a * lambda + c * (1.0 - lambda), b * lambda + e * (1.0 - lambda));
        t.record("concavity", mixed - (lambda * base + (1.0 - lambda) * nc_min_trace(c, e)));
      }

      const HermitianOperator joint = nc_min(direct_sum(a, c), direct_sum(b, e));
      t.record("direct_sum", -frobenius_distance(joint, direct_sum(nc_min(a, b), nc_min(c, e))));

      const HermitianOperator fa = random_psd(s, d, true);
      const HermitianOperator fb = random_psd(s, d, true);
      const double full = nc_min_trace(fa, fb);
      for (int k = 1; k <= 9; ++k) {
        const double sv = 0.1 * k;
        const double chernoff = trace_product(apply_spectral_function(fa, SpectralFunction::power(1.0 - sv)),
                                              apply_spectral_function(fb, SpectralFunction::power(sv)));
        t.record("chernoff", chernoff - full);
      }

      t.record("barnum_knill", base - trace_product(a, nc_quotient(b, a + b)));
      t.record("min_max_identity", -frobenius_distance(nc_min(a, b) + nc_max(a, b), a + b));

      const HermitianOperator id = HermitianOperator::identity(d);
      for (int k = 0; k < kSpotTests; ++k) {
        const HermitianOperator test = s.test(d);
        t.record("helstrom_spot_check", trace_product(a, id - test) + trace_product(b, test) - base);
      }
    }
  }
  return t.finish();
}

CheckReport run_hn_checks(const CheckOptions& options) {
  validate(options);
  Tracker t("hn");
  t.add("hn_margin", 1e-8);
  for (int d : options.dims) {
    InstanceSampler s(dim_seed(options.seed, d));
    for (long long trial = 0; trial < options.trials; ++trial) {
      const HermitianOperator a = s.test(d);
      const HermitianOperator b = random_psd(s, d);
      for (double c : {0.1, 1.0, 10.0}) t.record("hn_margin", check_hn_inequality(a, b, c));
    }
  }
  return t.finish();
}

CheckReport run_trace_chain_checks(const CheckOptions& options) {
  validate(options);
  Tracker t("trace-chain");
  t.add("lhs_le_mid", 2e-9);
  t.add("mid_le_rhs", 2e-9);
  t.add("collision_step", 1e-9);
  for (int d : options.dims) {
    InstanceSampler s(dim_seed(options.seed, d));
    for (long long trial = 0; trial < options.trials; ++trial) {
      const bool deficient = d > 1 && trial % 2 == 1;
      const int rank_a = deficient ? s.integer(1, d - 1) : d;
      const int rank_b = deficient ? s.integer(1, d - 1) : d;
      const HermitianOperator a = s.psd(d, rank_a, s.uniform(0.1, 2.0));
      const HermitianOperator b = s.psd(d, rank_b, s.uniform(0.1, 2.0));
      const TraceChain chain = check_trace_chain(a, b);
      t.record("lhs_le_mid", chain.mid - chain.lhs);
      t.record("mid_le_rhs", chain.rhs - chain.mid);
      const CollisionStep step = check_collision_step(a, b);
      t.record("collision_step", (step.before - step.after) / std::max(1.0, step.before));
    }
  }
  return t.finish();
}

}  // namespace oneshot
