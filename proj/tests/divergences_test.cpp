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

#include <cmath>

#include "oneshot/divergences.hpp"
#include "oneshot/error.hpp"
#include "oneshot/random.hpp"
#include "test_util.hpp"

using namespace oneshot;
using oneshot::testing::classical_channel;
using oneshot::testing::diag_state;

namespace {

const DensityOperator kRho = diag_state({0.5, 0.5});
const DensityOperator kSigma = diag_state({0.9, 0.1});

}  // namespace

TEST_CASE("diagonal pair reference values") {
  // Classical formulas over the two outcomes.
  const double petz2 = std::log(0.25 / 0.9 + 0.25 / 0.1);
  const double d = 0.5 * std::log(0.5 / 0.9) + 0.5 * std::log(0.5 / 0.1);
  const double v = 0.5 * std::pow(std::log(0.5 / 0.9), 2) + 0.5 * std::pow(std::log(0.5 / 0.1), 2) - d * d;

  CHECK(petz_renyi(kRho, kSigma, 2.0).value() == doctest::Approx(petz2).epsilon(1e-12));
  CHECK(petz_renyi(kRho, kSigma, 2.0).value() == doctest::Approx(1.02165).epsilon(1e-5));
  CHECK(relative_entropy(kRho, kSigma).value() == doctest::Approx(d).epsilon(1e-12));
  CHECK(relative_entropy(kRho, kSigma).value() == doctest::Approx(0.51083).epsilon(1e-5));
  CHECK(relative_entropy_variance(kRho, kSigma).value() == doctest::Approx(v).epsilon(1e-12));
  CHECK(relative_entropy_variance(kRho, kSigma).value() == doctest::Approx(1.2069).epsilon(1e-4));
  CHECK(collision_divergence(kRho.op(), kSigma.op()).value() == doctest::Approx(petz2).epsilon(1e-12));
  CHECK(max_relative_entropy(kRho, kSigma).value() == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("identical and disjoint states") {
  InstanceSampler s(21);
  const DensityOperator r = s.density(3, 3);
  for (double a : {0.3, 0.7, 1.5, 2.0}) CHECK(std::abs(petz_renyi(r, r, a).value()) <= 1e-10);
  CHECK(std::abs(relative_entropy(r, r).value()) <= 1e-10);
  CHECK(std::abs(relative_entropy_variance(r, r).value()) <= 1e-10);
  CHECK(std::abs(collision_divergence(r.op(), r.op()).value()) <= 1e-10);
  CHECK(std::abs(max_relative_entropy(r, r).value()) <= 1e-10);

  const DensityOperator e0 = diag_state({1.0, 0.0});
  const DensityOperator e1 = diag_state({0.0, 1.0});
  const DensityOperator mixed = diag_state({0.5, 0.5});
  CHECK(petz_renyi(mixed, e1, 1.5).is_infinite());
  CHECK(relative_entropy(e0, e1).is_infinite());
  CHECK(collision_divergence(e0.op(), e1.op()).is_infinite());
  CHECK(max_relative_entropy(e0, e1).is_infinite());
  CHECK_THROWS_AS(relative_entropy_variance(e0, e1), Error);
  // Order below one stays finite when the supports only overlap.
  CHECK_FALSE(petz_renyi(mixed, e1, 0.5).is_infinite());
  CHECK_THROWS_AS(petz_renyi(mixed, e1, 2.5), Error);
  CHECK_THROWS_AS(petz_renyi(mixed, e1, 1.0), Error);
}

TEST_CASE("petz orders approach the relative entropy") {
  InstanceSampler s(33);
  for (int i = 0; i < 20; ++i) {
    const DensityOperator r = s.density(3, 3);
    const DensityOperator q = s.density(3, 3);
    const double d = relative_entropy(r, q).value();
    CHECK(std::abs(petz_renyi(r, q, 1.001).value() - d) <= 0.01 * (1.0 + std::abs(d)));
    CHECK(std::abs(petz_renyi(r, q, 0.999).value() - d) <= 0.01 * (1.0 + std::abs(d)));
  }
}

TEST_CASE("cq mutual information quantities") {
  const CQChannel noiseless = classical_channel({{1, 0}, {0, 1}}, {0.5, 0.5});
  const CQState st = build_cq_joint(noiseless);
  for (double a : {0.55, 0.7, 0.9, 1.5}) CHECK(cq_mutual_renyi(st, a).value() == doctest::Approx(std::log(2.0)));
  CHECK(cq_mutual_information(st) == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(cq_mutual_information_variance(st)) <= 1e-12);

  const CQChannel flat = classical_channel({{0.3, 0.7}, {0.3, 0.7}}, {0.4, 0.6});
  CHECK(std::abs(cq_mutual_renyi(build_cq_joint(flat), 0.7).value()) <= 1e-12);

  InstanceSampler s(41);
  for (int i = 0; i < 10; ++i) {
    const CQState r = build_cq_joint(s.cq_channel(3, 2));
    // Full-matrix oracle on the block-diagonal embedding.
    const double full = petz_renyi(r.joint_matrix(), r.product_of_marginals(), 0.7).value();
    CHECK(cq_mutual_renyi(r, 0.7).value() == doctest::Approx(full).epsilon(1e-9));
    const double full_kl = relative_entropy(r.joint_matrix(), r.product_of_marginals()).value();
    CHECK(cq_mutual_information(r) == doctest::Approx(full_kl).epsilon(1e-9));
  }

  // Uniform X with trivial side information.
  const CQChannel trivial = classical_channel({{1.0}, {1.0}}, {0.5, 0.5});
  for (double a : {0.6, 0.8}) CHECK(cq_conditional_renyi(build_cq_joint(trivial), a) == doctest::Approx(std::log(2.0)));
  const CQChannel determ = classical_channel({{1.0}}, {1.0});
  CHECK(std::abs(cq_conditional_renyi(build_cq_joint(determ), 0.7)) <= 1e-12);
}

TEST_CASE("normal quantiles") {
  CHECK(std::abs(inverse_normal_cdf(0.5)) <= 1e-15);
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.959964).epsilon(1e-6));
  for (double p : {1e-10, 0.01, 0.3, 0.8, 0.999999}) CHECK(normal_cdf(inverse_normal_cdf(p)) == doctest::Approx(p).epsilon(1e-12));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), Error);
}
