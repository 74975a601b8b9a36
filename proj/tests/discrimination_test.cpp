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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oneshot/discrimination.hpp"
#include "oneshot/error.hpp"
#include "oneshot/random.hpp"
#include "test_util.hpp"

using namespace oneshot;
using oneshot::testing::diag;
using oneshot::testing::diag_state;
using oneshot::testing::projector;

namespace {

// Randomized likelihood-ratio test for diagonal states: accept outcomes in
// decreasing p/q order until the type-I budget is spent.
double classical_np_type2(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  std::vector<int> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return p[a] * q[b] > p[b] * q[a]; });
  double need = 1.0 - eps;  // mass of p that must be accepted
  double type2 = 0.0;
  for (int i : idx) {
    if (need <= 0.0) break;
    if (p[i] <= 0.0) continue;
    const double take = std::min(1.0, need / p[i]);
    need -= take * p[i];
    type2 += take * q[i];
  }
  return type2;
}

// sup{g : sum_{ln(p/q) <= g} p <= eps} for diagonal states with q > 0.
double classical_ds(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  std::vector<std::pair<double, double>> llr;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) llr.emplace_back(std::log(p[i] / q[i]), p[i]);
  }
  std::sort(llr.begin(), llr.end());
  double mass = 0.0;
  for (std::size_t i = 0; i < llr.size(); ++i) {
    mass += llr[i].second;
    // Ties jump together.
    if (i + 1 < llr.size() && llr[i + 1].first == llr[i].first) continue;
    if (mass > eps) return llr[i].first;
  }
  return llr.back().first;
}

std::vector<double> random_prob(InstanceSampler& s, int n) { return s.probability(n); }

}  // namespace

TEST_CASE("helstrom error") {
  CHECK(helstrom(diag({0.5, 0.0}), diag({0.0, 0.5})).error == doctest::Approx(0.0));
  const HermitianOperator half = diag({0.25, 0.25});
  CHECK(helstrom(half, half).error == doctest::Approx(0.5));
  const HelstromResult r = helstrom(projector({1.0, 0.0}) * 0.5, projector({1.0, 1.0}) * 0.5);
  CHECK(r.error == doctest::Approx(0.5 * (1.0 - std::sqrt(0.5))).epsilon(1e-12));
}

TEST_CASE("pretty good measurement") {
  const HermitianOperator a = projector({1.0, 0.0}) * 0.5;
  const HermitianOperator b = projector({0.0, 1.0}) * 0.5;
  const std::vector<HermitianOperator> ortho{a, b};
  const POVM m = pgm(ortho);
  CHECK(frobenius_distance(m.elements[0], diag({1.0, 0.0})) <= 1e-12);
  CHECK(frobenius_distance(m.elements[1], diag({0.0, 1.0})) <= 1e-12);
  CHECK(pgm_error(ortho) == doctest::Approx(0.0));

  // Identical rank-one states: each element is 1/M of the support, plus the completion on element 0.
  const HermitianOperator p = projector({1.0, 1.0, 0.0});
  const std::vector<HermitianOperator> same{p * (1.0 / 3), p * (1.0 / 3), p * (1.0 / 3)};
  const POVM ms = pgm(same);
  CHECK(frobenius_distance(ms.elements[1], p * (1.0 / 3)) <= 1e-12);
  CHECK(frobenius_distance(ms.elements[0], p * (1.0 / 3) + (HermitianOperator::identity(3) - p)) <= 1e-12);
  CHECK(pgm_error(same) == doctest::Approx(2.0 / 3.0));

  const std::vector<HermitianOperator> dup{diag({0.25, 0.25}), diag({0.25, 0.25})};
  CHECK(pgm_error(dup) == doctest::Approx(0.5));

  InstanceSampler s(17);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> w = random_prob(s, 3);
    std::vector<HermitianOperator> ens;
    for (double x : w) ens.push_back(s.density(2).op() * x);
    const POVM e = pgm(ens);
    HermitianOperator sum = HermitianOperator::zero(2);
    for (const auto& el : e.elements) sum = sum + el;
    CHECK(frobenius_distance(sum, HermitianOperator::identity(2)) <= 1e-8);
    const std::vector<double> per = pgm_message_errors(ens);
    CHECK(std::accumulate(per.begin(), per.end(), 0.0) == doctest::Approx(pgm_error(ens)).epsilon(1e-12));
  }

  const std::vector<HermitianOperator> plus{projector({1.0, 0.0}) * 0.5, projector({1.0, 1.0}) * 0.5};
  const double h = helstrom(plus[0], plus[1]).error;
  CHECK(pgm_error(plus) >= h - 1e-12);
  CHECK(pgm_error(plus) <= 2.0 * h + 1e-12);
  CHECK_THROWS_AS(pgm_error(std::vector<HermitianOperator>{diag({0.3, 0.3})}), Error);
}

TEST_CASE("neyman pearson on the diagonal pair") {
  const DensityOperator rho = diag_state({0.5, 0.5});
  const DensityOperator sigma = diag_state({0.9, 0.1});
  const NPResult r = neyman_pearson(rho, sigma, 0.5);
  CHECK(r.type2 == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(r.type1 <= 0.5 + 1e-9);
  CHECK(frobenius_distance(r.test.op(), diag({0.0, 1.0})) <= 1e-6);
  CHECK(ht_divergence(rho, sigma, 0.5).value() == doctest::Approx(-std::log(0.1)).epsilon(1e-9));
  CHECK(is_divergence(rho, sigma, 0.5).value() == doctest::Approx(std::log(5.0)).epsilon(1e-9));

  CHECK(neyman_pearson(rho, rho, 0.3).type2 == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(ht_divergence(rho, rho, 0.5).value() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(std::abs(is_divergence(rho, rho, 0.5).value()) <= 1e-9);

  const DensityOperator e0 = diag_state({1.0, 0.0});
  const DensityOperator e1 = diag_state({0.0, 1.0});
  const NPResult o = neyman_pearson(e0, e1, 0.2);
  CHECK(o.orthogonal);
  CHECK(o.type2 == 0.0);
  CHECK(ht_divergence(e0, e1, 0.2).is_infinite());
  CHECK(is_divergence(e0, e1, 0.2).is_infinite());
  CHECK_THROWS_AS(neyman_pearson(rho, sigma, 1.0), Error);
  CHECK_THROWS_AS(neyman_pearson(rho, sigma, 0.0), Error);
}

TEST_CASE("neyman pearson against the classical optimum") {
  InstanceSampler s(23);
  for (int i = 0; i < 40; ++i) {
    const int d = s.integer(2, 5);
    const std::vector<double> p = s.probability(d);
    const std::vector<double> q = s.probability(d);
    const double eps = s.uniform(0.05, 0.9);
    // Random common basis: the optimum is basis independent.
    const Matrix u = s.unitary(d);
    auto rotate = [&](const std::vector<double>& v) {
      return DensityOperator(HermitianOperator::from_hermitian_unchecked(u * diag(v).matrix() * u.adjoint()));
    };
    const NPResult r = neyman_pearson(rotate(p), rotate(q), eps);
    CHECK(r.type2 == doctest::Approx(classical_np_type2(p, q, eps)).epsilon(1e-8));
    CHECK(r.type1 <= eps + 1e-9);
    CHECK(is_divergence(rotate(p), rotate(q), eps).value() == doctest::Approx(classical_ds(p, q, eps)).epsilon(1e-6));
  }
}

TEST_CASE("ht divergence under mixing of the alternative") {
  InstanceSampler s(29);
  for (int i = 0; i < 50; ++i) {
    const DensityOperator r = s.density(3);
    const DensityOperator q = s.density(3);
    const double lambda = s.uniform(0.1, 0.9);
    const DensityOperator mixed(q.op() * lambda + r.op() * (1.0 - lambda));
    CHECK(ht_divergence(r, mixed, 0.2).as_double() <= ht_divergence(r, q, 0.2).as_double() + 1e-6);
  }
}

TEST_CASE("hayashi nagaoka margins") {
  CHECK(check_hn_inequality(HermitianOperator::identity(2), HermitianOperator::zero(2), 1.0) == doctest::Approx(0.0));
  CHECK(check_hn_inequality(HermitianOperator::zero(2), HermitianOperator::zero(2), 1.0) == doctest::Approx(1.0));
  InstanceSampler s(31);
  for (int i = 0; i < 100; ++i) {
    const HermitianOperator a = s.test(3);
    const HermitianOperator b = s.psd(3, s.integer(1, 3), s.uniform(0.1, 3.0));
    for (double c : {0.1, 1.0, 10.0}) CHECK(check_hn_inequality(a, b, c) >= -1e-8);
  }
}

TEST_CASE("trace chain") {
  const HermitianOperator half = diag({0.25, 0.25});
  const TraceChain t = check_trace_chain(half, half);
  CHECK(t.lhs == doctest::Approx(0.25));
  CHECK(t.mid == doctest::Approx(0.25));
  CHECK(t.rhs == doctest::Approx(0.5));
  const TraceChain o = check_trace_chain(diag({0.5, 0.0}), diag({0.0, 0.5}));
  CHECK(std::abs(o.lhs) <= 1e-12);
  CHECK(std::abs(o.rhs) <= 1e-12);

  InstanceSampler s(37);
  for (int i = 0; i < 50; ++i) {
    const HermitianOperator a = s.psd(3, s.integer(1, 3));
    const HermitianOperator b = s.psd(3, s.integer(1, 3));
    const TraceChain c = check_trace_chain(a, b);
    CHECK(c.lhs <= c.mid + 2e-9);
    CHECK(c.mid <= c.rhs + 2e-9);
    const CollisionStep step = check_collision_step(a, b);
    CHECK(step.after <= step.before + 1e-9 * std::max(1.0, step.before));
  }
}

TEST_CASE("hoeffding pgm") {
  const DensityOperator rho = diag_state({0.5, 0.5});
  const HoeffdingResult same = hoeffding_pgm(rho, rho, 0.5, 0.5);
  CHECK(same.type2_bound == doctest::Approx(std::exp(-0.5)));
  CHECK(same.type1_bound == doctest::Approx(std::exp(0.5)));

  const HoeffdingResult orth = hoeffding_pgm(diag_state({1.0, 0.0}), diag_state({0.0, 1.0}), 0.5, 0.3);
  CHECK(orth.divergence.is_infinite());
  CHECK(orth.type1_bound == 0.0);
  CHECK(orth.type1_actual == doctest::Approx(0.0));

  const HoeffdingResult diag_pair = hoeffding_pgm(rho, diag_state({0.9, 0.1}), 0.7, 0.3);
  CHECK(diag_pair.type1_actual <= diag_pair.type1_bound + 1e-9);
  CHECK(diag_pair.type2_actual <= diag_pair.type2_bound + 1e-9);

  CHECK_THROWS_AS(hoeffding_pgm(rho, rho, 1.0, 0.3), Error);
  CHECK_THROWS_AS(hoeffding_pgm(rho, rho, 0.5, -0.1), Error);
}

TEST_CASE("stein-type pgm") {
  InstanceSampler s(43);
  for (int i = 0; i < 30; ++i) {
    const DensityOperator r = s.density(3);
    const DensityOperator q = s.density(3, 3);
    const SteinResult st = stein_pgm(r, q, 0.2, 0.05);
    CHECK(st.type1_actual <= 0.2 + 1e-8);
    CHECK(st.type2_actual <= st.type2_bound + 1e-8);
  }
  CHECK_THROWS_AS(stein_pgm(diag_state({0.5, 0.5}), diag_state({0.9, 0.1}), 0.2, 0.2), Error);
}
