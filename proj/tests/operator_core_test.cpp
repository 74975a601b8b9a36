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

#include "oneshot/error.hpp"
#include "oneshot/operator_core.hpp"
#include "oneshot/random.hpp"
#include "test_util.hpp"

using namespace oneshot;
using oneshot::testing::diag;
using oneshot::testing::projector;

namespace {

bool close(const HermitianOperator& a, const HermitianOperator& b, double tol = 1e-12) {
  return frobenius_distance(a, b) <= tol;
}

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("hermitian gate rejects skewed input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, 1e-3);
  m(1, 0) = Complex(0.0, 1e-3);
  CHECK_THROWS_AS(HermitianOperator{m}, Error);
  m(1, 0) = Complex(0.0, -1e-3);
  CHECK_NOTHROW(HermitianOperator{m});
}

TEST_CASE("spectra of small matrices") {
  const Spectrum d = spectral_decompose(diag({1.0, 2.0}));
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(2.0));
  const Spectrum x = spectral_decompose(HermitianOperator(pauli_x()));
  CHECK(x.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(x.eigenvalues(1) == doctest::Approx(1.0));

  InstanceSampler s(3);
  const HermitianOperator h = s.hermitian(4);
  CHECK(frobenius_distance(spectral_decompose(h).reconstruct(), h) <= 1e-9);
}

TEST_CASE("spectral functions") {
  CHECK(close(apply_spectral_function(diag({-0.3, 0.7}), SpectralFunction::abs()), diag({0.3, 0.7})));
  CHECK(close(apply_spectral_function(diag({4.0, 0.0}), SpectralFunction::pseudo_inv_sqrt()), diag({0.5, 0.0})));
  CHECK(close(apply_spectral_function(HermitianOperator(pauli_x()), SpectralFunction::power(2.0)),
              HermitianOperator::identity(2), 1e-12));
  // Fractional powers of a negative eigenvalue are a domain error.
  CHECK_THROWS_AS(apply_spectral_function(diag({-0.5, 1.0}), SpectralFunction::power(0.5)), Error);
}

TEST_CASE("psd gate clips roundoff and rejects real negatives") {
  CHECK_NOTHROW(require_psd(diag({-1e-11, 1.0})));
  CHECK(require_psd(diag({-1e-11, 1.0}))(0, 0).real() == 0.0);
  CHECK_THROWS_AS(require_psd(diag({-1e-6, 1.0})), Error);
}

TEST_CASE("noncommutative minimal and maximal") {
  const HermitianOperator a = diag({0.6, 0.4});
  const HermitianOperator b = diag({0.4, 0.6});
  CHECK(close(nc_min(a, b), diag({0.4, 0.4})));
  CHECK(close(nc_max(a, b), diag({0.6, 0.6})));
  CHECK(close(nc_min(a, a), a));
  const HermitianOperator h = diag({0.3, -0.2});
  CHECK(close(nc_max(h, HermitianOperator::zero(2)), apply_spectral_function(h, SpectralFunction::positive_part())));

  // Two pure states: Helstrom value (1 - sqrt(1 - |<psi|phi>|^2)) / 2 with weights 1/2.
  const HermitianOperator p0 = projector({1.0, 0.0}) * 0.5;
  const HermitianOperator pp = projector({1.0, 1.0}) * 0.5;
  const double overlap = 0.5;
  const double expected = 0.5 * (1.0 - std::sqrt(1.0 - overlap));
  CHECK(nc_min_trace(p0, pp) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(nc_min(p0, pp).trace() == doctest::Approx(0.146447).epsilon(1e-5));

  InstanceSampler s(11);
  for (int i = 0; i < 20; ++i) {
    const HermitianOperator x = s.psd(3, 2, 0.7);
    const HermitianOperator y = s.psd(3, 3, 1.3);
    CHECK(nc_max(x, y).trace() >= std::max(x.trace(), y.trace()) - 1e-12);
    CHECK(frobenius_distance(nc_min(x, y) + nc_max(x, y), x + y) <= 1e-9);
    CHECK(nc_min(x, y).trace() == doctest::Approx(nc_min_trace(x, y)).epsilon(1e-10));
  }
}

TEST_CASE("noncommutative quotient") {
  CHECK(close(nc_quotient(diag({0.2, 0.8}), diag({0.5, 0.5})), diag({0.4, 1.6}), 1e-12));
  const HermitianOperator a = diag({0.7, 0.0, 0.3});
  CHECK(close(nc_quotient(a, a), diag({1.0, 0.0, 1.0}), 1e-12));

  InstanceSampler s(5);
  for (int i = 0; i < 20; ++i) {
    const HermitianOperator r = s.density(3).op();
    const HermitianOperator q = s.density(3).op();
    const Spectrum sp = spectral_decompose(nc_quotient(r, r + q));
    CHECK(sp.min_eigenvalue() >= -1e-10);
    CHECK(sp.max_eigenvalue() <= 1.0 + 1e-10);
  }
}

TEST_CASE("tensor products are A-major") {
  CHECK(close(tensor_product(HermitianOperator::identity(2), HermitianOperator::identity(2)),
              HermitianOperator::identity(4)));
  CHECK(close(tensor_product(diag({1.0, 0.0}), diag({0.0, 1.0})), diag({0.0, 1.0, 0.0, 0.0})));
  InstanceSampler s(2);
  const DensityOperator r = s.density(2);
  const DensityOperator q = s.density(3);
  CHECK(tensor_product(r.op(), q.op()).trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial traces and permutations") {
  InstanceSampler s(9);
  const HermitianOperator r = s.density(2).op();
  const HermitianOperator q = s.density(3).op();
  const HermitianOperator rq = tensor_product(r, q);
  CHECK(close(partial_trace(rq, {2, 3}, {0}), r, 1e-12));
  CHECK(close(partial_trace(rq, {2, 3}, {1}), q, 1e-12));
  CHECK(close(permute_factors(rq, {2, 3}, {1, 0}), tensor_product(q, r), 1e-12));

  const HermitianOperator phi = oneshot::testing::max_entangled(2).op();
  CHECK(close(partial_trace(phi, {2, 2}, {1}), HermitianOperator::identity(2) * 0.5, 1e-12));

  const HermitianOperator h = s.hermitian(12);
  CHECK(partial_trace(h, {2, 3, 2}, {1}).trace() == doctest::Approx(h.trace()).epsilon(1e-10));
  CHECK(std::abs(partial_trace(h, {2, 3, 2}, {0, 2}).trace() - h.trace()) <= 1e-10);
  CHECK_THROWS_AS(partial_trace(h, {2, 3}, {0}), Error);
}

TEST_CASE("direct sums") {
  CHECK(close(direct_sum(diag({1.0}), diag({2.0})), diag({1.0, 2.0})));
  InstanceSampler s(4);
  for (int i = 0; i < 10; ++i) {
    const HermitianOperator a = s.psd(2, 2), a2 = s.psd(3, 1);
    const HermitianOperator b = s.psd(2, 1), b2 = s.psd(3, 3);
    CHECK(frobenius_distance(nc_min(direct_sum(a, a2), direct_sum(b, b2)), direct_sum(nc_min(a, b), nc_min(a2, b2))) <=
          1e-9);
  }
}
