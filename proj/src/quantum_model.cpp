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

#include "oneshot/quantum_model.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {

DensityOperator::DensityOperator(const HermitianOperator& op) {
  const double tr = op.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
    std::ostringstream msg;
    msg << "density operator has trace " << tr << " (deviation " << std::abs(tr - 1.0) << ")";
    throw Error(ErrorCode::kNotNormalized, msg.str());
  }
  const bool clipped = spectral_decompose(op).min_eigenvalue() < 0.0;
  const Spectrum s = psd_spectrum(op, "density operator");
  op_ = clipped ? s.reconstruct() : op;
  support_ = support_projector(s);
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(HermitianOperator::identity(dim) * (1.0 / dim));
}

DensityOperator DensityOperator::pure(const Vector& v) {
  const double n = v.norm();
  if (n == 0.0) throw Error(ErrorCode::kZeroTrace, "pure state from a zero vector");
  return DensityOperator(HermitianOperator::outer(v / n));
}

void validate_prior(const std::vector<double>& prior, const std::string& what) {
  if (prior.empty()) throw Error(ErrorCode::kValidationError, what + ": empty prior");
  double sum = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (!(prior[i] >= 0.0) || !std::isfinite(prior[i])) {
      std::ostringstream msg;
      msg << what << "[" << i << "]: prior entry " << prior[i] << " is not a nonnegative number";
      throw Error(ErrorCode::kValidationError, msg.str());
    }
    sum += prior[i];
  }
  if (!(std::abs(sum - 1.0) <= kPriorTolerance)) {
    std::ostringstream msg;
    msg << what << ": prior sums to " << sum << " (deviation " << std::abs(sum - 1.0) << ")";
    throw Error(ErrorCode::kValidationError, msg.str());
  }
}

CQChannel::CQChannel(std::vector<std::string> alphabet, std::vector<double> prior,
                     std::vector<DensityOperator> outputs)
    : alphabet_(std::move(alphabet)), prior_(std::move(prior)), outputs_(std::move(outputs)) {
  if (alphabet_.empty()) throw Error(ErrorCode::kValidationError, "channel has an empty alphabet");
  if (alphabet_.size() != prior_.size() || alphabet_.size() != outputs_.size()) {
    throw Error(ErrorCode::kValidationError, "alphabet, prior and outputs differ in length");
  }
  validate_prior(prior_, "prior");
  for (std::size_t x = 0; x < outputs_.size(); ++x) {
    if (outputs_[x].dim() != outputs_[0].dim()) {
      std::ostringstream msg;
      msg << "output " << x << " has dim " << outputs_[x].dim() << ", expected " << outputs_[0].dim();
      throw Error(ErrorCode::kDimMismatch, msg.str());
    }
  }
}

HermitianOperator CQChannel::average_output() const {
  HermitianOperator avg = HermitianOperator::zero(dim_b());
  for (int x = 0; x < size(); ++x) {
    if (prior_[x] > 0.0) avg = avg + outputs_[x].op() * prior_[x];
  }
  return avg;
}

CQChannel CQChannel::with_prior(std::vector<double> prior) const {
  return CQChannel(alphabet_, std::move(prior), outputs_);
}

int CQChannel::index_of(const std::string& symbol) const {
  for (int x = 0; x < size(); ++x) {
    if (alphabet_[x] == symbol) return x;
  }
  throw Error(ErrorCode::kValidationError, "unknown channel symbol '" + symbol + "'");
}

CQState::CQState(std::vector<std::string> labels, std::vector<HermitianOperator> weighted_blocks)
    : labels_(std::move(labels)), blocks_(std::move(weighted_blocks)) {
  if (blocks_.empty()) throw Error(ErrorCode::kValidationError, "c-q state with no blocks");
  if (labels_.size() != blocks_.size()) {
    throw Error(ErrorCode::kValidationError, "c-q state labels and blocks differ in length");
  }
  double total = 0.0;
  for (auto& b : blocks_) {
    if (b.dim() != blocks_[0].dim()) throw Error(ErrorCode::kDimMismatch, "c-q blocks differ in dimension");
    b = require_psd(b, "c-q block");
    total += b.trace();
  }
  if (!(std::abs(total - 1.0) <= kTraceTolerance)) {
    std::ostringstream msg;
    msg << "c-q state has total trace " << total << " (deviation " << std::abs(total - 1.0) << ")";
    throw Error(ErrorCode::kNotNormalized, msg.str());
  }
}

std::vector<double> CQState::prior() const {
  std::vector<double> p;
  p.reserve(blocks_.size());
  for (const auto& b : blocks_) p.push_back(b.trace());
  return p;
}

HermitianOperator CQState::marginal_b() const {
  HermitianOperator sum = HermitianOperator::zero(dim_b());
  for (const auto& b : blocks_) sum = sum + b;
  return sum;
}

HermitianOperator CQState::joint_matrix() const { return direct_sum(blocks_); }

HermitianOperator CQState::product_of_marginals() const {
  const HermitianOperator rho_b = marginal_b();
  std::vector<HermitianOperator> parts;
  parts.reserve(blocks_.size());
  for (const auto& b : blocks_) parts.push_back(rho_b * b.trace());
  return direct_sum(parts);
}

CQState build_cq_joint(const CQChannel& ch) {
  std::vector<HermitianOperator> blocks;
  blocks.reserve(ch.size());
  for (int x = 0; x < ch.size(); ++x) blocks.push_back(ch.output(x).op() * ch.prior()[x]);
  return CQState(ch.alphabet(), std::move(blocks));
}

KrausChannel::KrausChannel(int in_dim, int out_dim, std::vector<Matrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim_ < 1 || out_dim_ < 1) throw Error(ErrorCode::kValidationError, "channel dimensions must be positive");
  if (kraus_.empty()) throw Error(ErrorCode::kValidationError, "channel has no Kraus operators");
  Matrix sum = Matrix::Zero(in_dim_, in_dim_);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    if (kraus_[k].rows() != out_dim_ || kraus_[k].cols() != in_dim_) {
      std::ostringstream msg;
      msg << "kraus[" << k << "] is " << kraus_[k].rows() << "x" << kraus_[k].cols() << ", expected "
          << out_dim_ << "x" << in_dim_;
      throw Error(ErrorCode::kShapeMismatch, msg.str());
    }
    sum += kraus_[k].adjoint() * kraus_[k];
  }
  const double dev = (sum - Matrix::Identity(in_dim_, in_dim_)).norm();
  if (!(dev <= kCompletenessTolerance)) {
    std::ostringstream msg;
    msg << "sum of K^dagger K deviates from identity by " << dev << " (Frobenius)";
    throw Error(ErrorCode::kCompletenessViolation, msg.str());
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

HermitianOperator KrausChannel::apply(const HermitianOperator& a) const {
  return apply(a, SubsystemShape{a.dim()}, 0);
}

HermitianOperator KrausChannel::apply(const HermitianOperator& a, const SubsystemShape& shape, int factor) const {
  shape.require_dim(a.dim(), "apply_kraus");
  if (factor < 0 || factor >= shape.factors()) throw Error(ErrorCode::kShapeMismatch, "acting factor out of range");
  if (shape.dim(factor) != in_dim_) {
    std::ostringstream msg;
    msg << "acting factor has dim " << shape.dim(factor) << ", channel expects " << in_dim_;
    throw Error(ErrorCode::kShapeMismatch, msg.str());
  }
  int before = 1, after = 1;
  for (int f = 0; f < factor; ++f) before *= shape.dim(f);
  for (int f = factor + 1; f < shape.factors(); ++f) after *= shape.dim(f);
  const Matrix id_before = Matrix::Identity(before, before);
  const Matrix id_after = Matrix::Identity(after, after);
  const int out = before * out_dim_ * after;
  Matrix result = Matrix::Zero(out, out);
  for (const Matrix& k : kraus_) {
    const Matrix lifted = kron(kron(id_before, k), id_after);
    result += lifted * a.matrix() * lifted.adjoint();
  }
  return HermitianOperator::from_hermitian_unchecked(result);
}

DensityOperator apply_kraus(const KrausChannel& ch, const DensityOperator& rho, const SubsystemShape& shape,
                            int acting_factor) {
  return DensityOperator(ch.apply(rho.op(), shape, acting_factor));
}

SubsystemShape replace_factor(const SubsystemShape& shape, int factor, int dim) {
  std::vector<int> dims = shape.factor_dims();
  dims.at(factor) = dim;
  return SubsystemShape(std::move(dims));
}

std::pair<std::string, std::string> split_pair_label(const std::string& label) {
  const auto bar = label.find('|');
  if (bar == std::string::npos) {
    throw Error(ErrorCode::kValidationError, "symbol '" + label + "' is not a pair label of the form a|b");
  }
  return {label.substr(0, bar), label.substr(bar + 1)};
}

namespace {

// Index of `label` in `labels`, appending it when new.
int intern(std::vector<std::string>& labels, const std::string& label) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  labels.push_back(label);
  return static_cast<int>(labels.size()) - 1;
}

// Splits every channel symbol into a pair and checks the grid is complete.
struct PairGrid {
  std::vector<std::string> first, second;
  std::vector<std::vector<int>> symbol;  // [a][b] -> channel index
};

PairGrid pair_grid(const CQChannel& ch) {
  PairGrid g;
  std::vector<std::pair<int, int>> cells;
  for (const auto& label : ch.alphabet()) {
    const auto [a, b] = split_pair_label(label);
    cells.emplace_back(intern(g.first, a), intern(g.second, b));
  }
  g.symbol.assign(g.first.size(), std::vector<int>(g.second.size(), -1));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    int& slot = g.symbol[cells[i].first][cells[i].second];
    if (slot != -1) throw Error(ErrorCode::kValidationError, "duplicate pair symbol '" + ch.alphabet()[i] + "'");
    slot = static_cast<int>(i);
  }
  for (std::size_t a = 0; a < g.first.size(); ++a) {
    for (std::size_t b = 0; b < g.second.size(); ++b) {
      if (g.symbol[a][b] == -1) {
        throw Error(ErrorCode::kValidationError,
                    "pair alphabet is missing symbol '" + g.first[a] + "|" + g.second[b] + "'");
      }
    }
  }
  return g;
}

std::vector<std::vector<int>> resolve_map(const CQChannel& ch, const Precoder& pre) {
  if (pre.map.size() != pre.u_labels.size()) throw Error(ErrorCode::kPartialPrecoder, "precoder map has wrong row count");
  std::vector<std::vector<int>> out(pre.u_labels.size());
  for (std::size_t u = 0; u < pre.u_labels.size(); ++u) {
    if (pre.map[u].size() != pre.w_labels.size()) {
      throw Error(ErrorCode::kPartialPrecoder, "precoder map row '" + pre.u_labels[u] + "' is incomplete");
    }
    for (std::size_t w = 0; w < pre.w_labels.size(); ++w) {
      const std::string& x = pre.map[u][w];
      if (x.empty()) {
        throw Error(ErrorCode::kPartialPrecoder,
                    "precoder has no codeword for '" + pre.u_labels[u] + "|" + pre.w_labels[w] + "'");
      }
      out[u].push_back(ch.index_of(x));
    }
  }
  return out;
}

}  // namespace

MacChannel MacChannel::from_product_channel(const CQChannel& ch) {
  const PairGrid g = pair_grid(ch);
  MacChannel mac;
  mac.x_labels = g.first;
  mac.y_labels = g.second;
  mac.px.assign(g.first.size(), 0.0);
  mac.py.assign(g.second.size(), 0.0);
  for (std::size_t a = 0; a < g.first.size(); ++a) {
    for (std::size_t b = 0; b < g.second.size(); ++b) {
      const double p = ch.prior()[g.symbol[a][b]];
      mac.px[a] += p;
      mac.py[b] += p;
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < g.first.size(); ++a) {
    for (std::size_t b = 0; b < g.second.size(); ++b) {
      worst = std::max(worst, std::abs(ch.prior()[g.symbol[a][b]] - mac.px[a] * mac.py[b]));
    }
  }
  if (!(worst <= kPriorTolerance)) {
    std::ostringstream msg;
    msg << "pair prior is not a product of its marginals (max deviation " << worst << ")";
    throw Error(ErrorCode::kNonProductPrior, msg.str());
  }
  mac.outputs.resize(g.first.size());
  for (std::size_t a = 0; a < g.first.size(); ++a) {
    for (std::size_t b = 0; b < g.second.size(); ++b) mac.outputs[a].push_back(ch.output(g.symbol[a][b]));
  }
  return mac;
}

BroadcastModel BroadcastModel::make(const CQChannel& channel, const Precoder& precoder, int dim_b, int dim_c) {
  if (dim_b * dim_c != channel.dim_b()) {
    std::ostringstream msg;
    msg << "broadcast shape " << dim_b << "x" << dim_c << " does not match output dim " << channel.dim_b();
    throw Error(ErrorCode::kShapeMismatch, msg.str());
  }
  validate_prior(precoder.pu, "precoder u prior");
  validate_prior(precoder.pw, "precoder " + precoder.second_name + " prior");
  BroadcastModel m;
  m.channel = channel;
  m.dim_b = dim_b;
  m.dim_c = dim_c;
  m.pu = precoder.pu;
  m.pv = precoder.pw;
  m.u_labels = precoder.u_labels;
  m.v_labels = precoder.w_labels;
  m.map = resolve_map(channel, precoder);
  return m;
}

CQChannel BroadcastModel::receiver_b_channel() const {
  const SubsystemShape shape{dim_b, dim_c};
  std::vector<std::string> labels;
  std::vector<DensityOperator> outputs;
  for (std::size_t u = 0; u < pu.size(); ++u) {
    HermitianOperator avg = HermitianOperator::zero(dim_b);
    for (std::size_t v = 0; v < pv.size(); ++v) {
      if (pv[v] > 0.0) avg = avg + partial_trace(channel.output(map[u][v]).op(), shape, {0}) * pv[v];
    }
    labels.push_back(u_labels[u]);
    outputs.emplace_back(avg);
  }
  return CQChannel(labels, pu, outputs);
}

CQChannel BroadcastModel::receiver_c_channel() const {
  const SubsystemShape shape{dim_b, dim_c};
  std::vector<std::string> labels;
  std::vector<DensityOperator> outputs;
  for (std::size_t v = 0; v < pv.size(); ++v) {
    HermitianOperator avg = HermitianOperator::zero(dim_c);
    for (std::size_t u = 0; u < pu.size(); ++u) {
      if (pu[u] > 0.0) avg = avg + partial_trace(channel.output(map[u][v]).op(), shape, {1}) * pu[u];
    }
    labels.push_back(v_labels[v]);
    outputs.emplace_back(avg);
  }
  return CQChannel(labels, pv, outputs);
}

StateInfoModel StateInfoModel::make(const CQChannel& channel, const Precoder& precoder) {
  const PairGrid g = pair_grid(channel);
  validate_prior(precoder.pu, "precoder u prior");
  validate_prior(precoder.pw, "precoder " + precoder.second_name + " prior");
  // Align the precoder's state labels with the channel's.
  std::vector<int> s_index;
  for (const auto& s : precoder.w_labels) {
    int found = -1;
    for (std::size_t i = 0; i < g.second.size(); ++i) {
      if (g.second[i] == s) found = static_cast<int>(i);
    }
    if (found < 0) throw Error(ErrorCode::kValidationError, "precoder state '" + s + "' is not a channel state");
    s_index.push_back(found);
  }
  if (s_index.size() != g.second.size()) {
    throw Error(ErrorCode::kValidationError, "precoder does not list every channel state");
  }
  StateInfoModel m;
  m.pu = precoder.pu;
  m.ps = precoder.pw;
  m.u_labels = precoder.u_labels;
  m.outputs.resize(g.first.size());
  for (std::size_t x = 0; x < g.first.size(); ++x) {
    for (int s : s_index) m.outputs[x].push_back(channel.output(g.symbol[x][s]));
  }
  if (precoder.map.size() != precoder.u_labels.size()) {
    throw Error(ErrorCode::kPartialPrecoder, "precoder map has wrong row count");
  }
  for (std::size_t u = 0; u < precoder.u_labels.size(); ++u) {
    if (precoder.map[u].size() != precoder.w_labels.size()) {
      throw Error(ErrorCode::kPartialPrecoder, "precoder map row '" + precoder.u_labels[u] + "' is incomplete");
    }
    std::vector<int> row;
    for (std::size_t s = 0; s < precoder.w_labels.size(); ++s) {
      const std::string& x = precoder.map[u][s];
      if (x.empty()) {
        throw Error(ErrorCode::kPartialPrecoder,
                    "precoder has no codeword for '" + precoder.u_labels[u] + "|" + precoder.w_labels[s] + "'");
      }
      int xi = -1;
      for (std::size_t i = 0; i < g.first.size(); ++i) {
        if (g.first[i] == x) xi = static_cast<int>(i);
      }
      if (xi < 0) throw Error(ErrorCode::kValidationError, "precoder codeword '" + x + "' is not a channel input");
      row.push_back(xi);
    }
    m.map.push_back(row);
  }
  return m;
}

CQChannel StateInfoModel::induced_channel() const {
  std::vector<std::string> labels;
  std::vector<DensityOperator> induced;
  for (std::size_t u = 0; u < pu.size(); ++u) {
    HermitianOperator avg = HermitianOperator::zero(dim_b());
    for (std::size_t s = 0; s < ps.size(); ++s) {
      if (ps[s] > 0.0) avg = avg + outputs[map[u][s]][s].op() * ps[s];
    }
    labels.push_back(u_labels[u]);
    induced.emplace_back(avg);
  }
  return CQChannel(labels, pu, induced);
}

}  // namespace oneshot
