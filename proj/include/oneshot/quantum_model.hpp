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

#ifndef ONESHOT_QUANTUM_MODEL_HPP_
#define ONESHOT_QUANTUM_MODEL_HPP_

#include <string>
#include <vector>

#include "oneshot/operator_core.hpp"

namespace oneshot {

inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kPriorTolerance = 1e-12;
inline constexpr double kCompletenessTolerance = 1e-9;

// Unit-trace PSD operator. Small negative eigenvalues are clipped on construction.
class DensityOperator {
 public:
  DensityOperator() = default;
  explicit DensityOperator(const HermitianOperator& op);

  static DensityOperator maximally_mixed(int dim);
  // Normalizes v.
  static DensityOperator pure(const Vector& v);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const HermitianOperator& support() const { return support_; }

 private:
  HermitianOperator op_;
  HermitianOperator support_;
};

// Checks a probability vector: entries >= 0 and sum within kPriorTolerance of 1.
// `what` prefixes the diagnostic.
void validate_prior(const std::vector<double>& prior, const std::string& what);

class CQChannel {
 public:
  CQChannel() = default;
  CQChannel(std::vector<std::string> alphabet, std::vector<double> prior,
            std::vector<DensityOperator> outputs);

  int size() const { return static_cast<int>(alphabet_.size()); }
  int dim_b() const { return outputs_.front().dim(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<double>& prior() const { return prior_; }
  const std::vector<DensityOperator>& outputs() const { return outputs_; }
  const DensityOperator& output(int x) const { return outputs_.at(x); }

  // rho_B = sum_x p(x) rho^x.
  HermitianOperator average_output() const;
  CQChannel with_prior(std::vector<double> prior) const;
  int index_of(const std::string& symbol) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<double> prior_;
  std::vector<DensityOperator> outputs_;
};

// rho_XB = sum_x |x><x| (x) block_x, with block_x = p(x) rho^x already weighted.
class CQState {
 public:
  CQState() = default;
  CQState(std::vector<std::string> labels, std::vector<HermitianOperator> weighted_blocks);

  int size() const { return static_cast<int>(blocks_.size()); }
  int dim_b() const { return blocks_.front().dim(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<HermitianOperator>& blocks() const { return blocks_; }
  const HermitianOperator& block(int x) const { return blocks_.at(x); }

  // Tr block_x.
  double prior(int x) const { return blocks_.at(x).trace(); }
  std::vector<double> prior() const;
  HermitianOperator marginal_b() const;
  // Block-diagonal (|X| d_B)-dim operator, X-major.
  HermitianOperator joint_matrix() const;
  // rho_X (x) rho_B as a block-diagonal operator.
  HermitianOperator product_of_marginals() const;

 private:
  std::vector<std::string> labels_;
  std::vector<HermitianOperator> blocks_;
};

CQState build_cq_joint(const CQChannel& ch);

class KrausChannel {
 public:
  KrausChannel() = default;
  KrausChannel(int in_dim, int out_dim, std::vector<Matrix> kraus);

  static KrausChannel identity(int dim);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  // (id (x) N)(a) with N on `factor`; that factor's dim becomes out_dim.
  HermitianOperator apply(const HermitianOperator& a, const SubsystemShape& shape, int factor) const;
  HermitianOperator apply(const HermitianOperator& a) const;

 private:
  int in_dim_ = 1;
  int out_dim_ = 1;
  std::vector<Matrix> kraus_;
};

DensityOperator apply_kraus(const KrausChannel& ch, const DensityOperator& rho, const SubsystemShape& shape,
                            int acting_factor);

// Shape with factor `factor` replaced by `dim`.
SubsystemShape replace_factor(const SubsystemShape& shape, int factor, int dim);

// Two-sender c-q channel (x, y) -> rho_C^{xy} with independent priors.
struct MacChannel {
  std::vector<std::string> x_labels, y_labels;
  std::vector<double> px, py;
  std::vector<std::vector<DensityOperator>> outputs;  // [x][y]

  int dim_c() const { return outputs.front().front().dim(); }
  // Reads "x|y" labels; the pair prior must factor within kPriorTolerance.
  static MacChannel from_product_channel(const CQChannel& ch);
};

// Deterministic encoder (u, w) -> x with independent priors on u and w.
// w is the second message (broadcast) or the channel state (state information).
struct Precoder {
  std::string second_name = "v";
  std::vector<std::string> u_labels, w_labels;
  std::vector<double> pu, pw;
  std::vector<std::vector<std::string>> map;  // [u][w] -> x label
  int dim_b = 0;                              // 0 when unspecified
  int dim_c = 0;
};

// c-q broadcast channel with bipartite outputs on B (x) C and a precoder (u, v) -> x.
struct BroadcastModel {
  CQChannel channel;
  int dim_b = 1;
  int dim_c = 1;
  std::vector<std::string> u_labels, v_labels;
  std::vector<double> pu, pv;
  std::vector<std::vector<int>> map;  // [u][v] -> x index

  static BroadcastModel make(const CQChannel& channel, const Precoder& precoder, int dim_b, int dim_c);
  // u -> sum_v p(v) Tr_C rho^{x(u,v)} with prior p_U.
  CQChannel receiver_b_channel() const;
  // v -> sum_u p(u) Tr_B rho^{x(u,v)} with prior p_V.
  CQChannel receiver_c_channel() const;
};

// c-q channel over X x S with casual state information at the encoder.
struct StateInfoModel {
  std::vector<std::string> u_labels;
  std::vector<double> ps, pu;
  std::vector<std::vector<DensityOperator>> outputs;  // [x][s]
  std::vector<std::vector<int>> map;                  // [u][s] -> x index

  int dim_b() const { return outputs.front().front().dim(); }
  // channel labels are "x|s"; its prior is ignored, p_S comes from the precoder.
  static StateInfoModel make(const CQChannel& channel, const Precoder& precoder);
  // Induced channel u -> sum_s p(s) rho^{x(u,s), s} with prior p_U.
  CQChannel induced_channel() const;
};

// Splits "a|b" at the first '|'. Throws ValidationError without one.
std::pair<std::string, std::string> split_pair_label(const std::string& label);

}  // namespace oneshot

#endif  // ONESHOT_QUANTUM_MODEL_HPP_
