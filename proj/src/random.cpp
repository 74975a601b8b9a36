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

#include "oneshot/random.hpp"

#include <cmath>

#include "oneshot/error.hpp"

namespace oneshot {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int CounterRng::categorical(const std::vector<double>& p) {
  const double u = uniform();
  double acc = 0.0;
  int last = -1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last = static_cast<int>(i);
    if (u < acc) return last;
  }
  // u landed in the roundoff gap below 1.
  return last;
}

double InstanceSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int InstanceSampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Matrix InstanceSampler::ginibre(int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(engine_), n(engine_));
  }
  return g;
}

Matrix InstanceSampler::unitary(int dim) {
  const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

HermitianOperator InstanceSampler::hermitian(int dim) {
  const Matrix g = ginibre(dim, dim);
  return HermitianOperator::from_hermitian_unchecked((g + g.adjoint()) * 0.5);
}

HermitianOperator InstanceSampler::psd(int dim, int rank, double trace) {
  const Matrix g = ginibre(dim, rank);
  Matrix m = g * g.adjoint();
  m *= trace / m.trace().real();
  return HermitianOperator::from_hermitian_unchecked(m);
}

DensityOperator InstanceSampler::density(int dim, int rank) {
  if (rank <= 0) rank = integer(1, dim);
  return DensityOperator(psd(dim, rank, 1.0));
}

HermitianOperator InstanceSampler::test(int dim) {
  const Matrix u = unitary(dim);
  RealVector spectrum(dim);
  for (int i = 0; i < dim; ++i) spectrum(i) = uniform();
  return HermitianOperator::from_hermitian_unchecked(u * spectrum.cast<Complex>().asDiagonal() * u.adjoint());
}

std::vector<double> InstanceSampler::probability(int n, bool allow_zero) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) {
    v = -std::log(1.0 - uniform());
    sum += v;
  }
  for (auto& v : p) v /= sum;
  if (allow_zero && n > 1 && uniform() < 0.25) {
    const int k = integer(0, n - 1);
    const double gone = p[k];
    p[k] = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i != k) p[i] /= (1.0 - gone);
    }
  }
  // Put the roundoff in the largest entry so the sum is 1 to the last bit.
  double total = 0.0;
  int big = 0;
  for (int i = 0; i < n; ++i) {
    total += p[i];
    if (p[i] > p[big]) big = i;
  }
  p[big] += 1.0 - total;
  return p;
}

CQChannel InstanceSampler::cq_channel(int symbols, int dim_b) {
  std::vector<std::string> labels;
  std::vector<DensityOperator> outputs;
  for (int x = 0; x < symbols; ++x) {
    labels.push_back(std::to_string(x));
    outputs.push_back(density(dim_b));
  }
  return CQChannel(labels, probability(symbols), outputs);
}

KrausChannel InstanceSampler::kraus_channel(int in_dim, int out_dim, int kraus_count) {
  const int big = out_dim * kraus_count;
  if (big < in_dim) throw Error(ErrorCode::kDomainError, "too few Kraus operators for an isometry");
  const Matrix v = unitary(big).leftCols(in_dim);
  std::vector<Matrix> kraus;
  for (int k = 0; k < kraus_count; ++k) kraus.push_back(v.middleRows(k * out_dim, out_dim));
  return KrausChannel(in_dim, out_dim, std::move(kraus));
}

}  // namespace oneshot
