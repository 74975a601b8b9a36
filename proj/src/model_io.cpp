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

#include "oneshot/model_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "oneshot/error.hpp"

namespace oneshot {
namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kValidationError, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  return j.get<double>();
}

int positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) parse_fail(path, "expected a positive integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  parse_fail(path, "expected a string symbol");
}

Complex complex_entry(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail(path, "expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix(const json& j, const std::string& path, int rows = -1, int cols = -1) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a nonempty array of rows");
  const int r = static_cast<int>(j.size());
  if (!j[0].is_array()) parse_fail(index(path, 0), "expected a row array");
  const int c = static_cast<int>(j[0].size());
  if (rows >= 0 && (r != rows || c != cols)) {
    std::ostringstream msg;
    msg << "matrix is " << r << "x" << c << ", expected " << rows << "x" << cols;
    invalid(path, msg.str());
  }
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    const std::string row_path = index(path, i);
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c) parse_fail(row_path, "ragged matrix row");
    for (int k = 0; k < c; ++k) m(i, k) = complex_entry(j[i][k], index(row_path, k));
  }
  return m;
}

HermitianOperator hermitian(const Matrix& m, const std::string& path) {
  if (m.rows() != m.cols()) invalid(path, "matrix is not square");
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = i; k < m.cols(); ++k) {
      const double dev = std::abs(m(i, k) - std::conj(m(k, i)));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = k;
      }
    }
  }
  if (!(worst <= kHermiticityTolerance)) {
    std::ostringstream msg;
    msg << "not Hermitian at entry [" << wi << "][" << wj << "] (deviation " << worst << ")";
    invalid(path, msg.str());
  }
  return HermitianOperator(m);
}

DensityOperator density(const json& j, const std::string& path, int dim = -1) {
  const HermitianOperator h = hermitian(matrix(j, path, dim, dim), path);
  try {
    return DensityOperator(h);
  } catch (const Error& e) {
    invalid(path, e.what());
  }
}

CQChannel parse_cq(const json& root) {
  const int dim = positive_int(field(root, "dimB", ""), "dimB");
  const json& inputs = field(root, "inputs", "");
  if (!inputs.is_array() || inputs.empty()) parse_fail("inputs", "expected a nonempty array");
  std::vector<std::string> alphabet;
  std::vector<double> prior;
  std::vector<DensityOperator> outputs;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string p = index("inputs", i);
    alphabet.push_back(text(field(inputs[i], "symbol", p), join(p, "symbol")));
    for (std::size_t k = 0; k + 1 < alphabet.size(); ++k) {
      if (alphabet[k] == alphabet.back()) invalid(join(p, "symbol"), "duplicate symbol '" + alphabet.back() + "'");
    }
    prior.push_back(number(field(inputs[i], "prior", p), join(p, "prior")));
    outputs.push_back(density(field(inputs[i], "state", p), join(p, "state"), dim));
  }
  validate_prior(prior, "inputs[*].prior");
  return CQChannel(std::move(alphabet), std::move(prior), std::move(outputs));
}

KrausChannel parse_kraus(const json& root) {
  const int in_dim = positive_int(field(root, "in_dim", ""), "in_dim");
  const int out_dim = positive_int(field(root, "out_dim", ""), "out_dim");
  const json& list = field(root, "kraus", "");
  if (!list.is_array() || list.empty()) parse_fail("kraus", "expected a nonempty array of matrices");
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < list.size(); ++k) kraus.push_back(matrix(list[k], index("kraus", k), out_dim, in_dim));
  try {
    return KrausChannel(in_dim, out_dim, std::move(kraus));
  } catch (const Error& e) {
    invalid("kraus", e.what());
  }
}

void parse_symbol_list(const json& list, const std::string& path, std::vector<std::string>& labels,
                       std::vector<double>& prior) {
  if (!list.is_array() || list.empty()) parse_fail(path, "expected a nonempty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = index(path, i);
    labels.push_back(text(field(list[i], "symbol", p), join(p, "symbol")));
    prior.push_back(number(field(list[i], "prior", p), join(p, "prior")));
  }
  validate_prior(prior, path + "[*].prior");
}

Precoder parse_precoder(const json& root) {
  Precoder pre;
  parse_symbol_list(field(root, "u", ""), "u", pre.u_labels, pre.pu);
  const bool has_v = root.contains("v");
  const bool has_s = root.contains("s");
  if (has_v == has_s) parse_fail("", "precoder needs exactly one of 'v' or 's'");
  pre.second_name = has_v ? "v" : "s";
  parse_symbol_list(root[pre.second_name], pre.second_name, pre.w_labels, pre.pw);
  const json& map = field(root, "map", "");
  if (!map.is_object()) parse_fail("map", "expected an object keyed by 'u|" + pre.second_name + "'");
  pre.map.assign(pre.u_labels.size(), std::vector<std::string>(pre.w_labels.size()));
  for (auto it = map.begin(); it != map.end(); ++it) {
    const std::string p = join("map", it.key());
    const auto [u, w] = split_pair_label(it.key());
    std::size_t ui = pre.u_labels.size(), wi = pre.w_labels.size();
    for (std::size_t k = 0; k < pre.u_labels.size(); ++k) {
      if (pre.u_labels[k] == u) ui = k;
    }
    for (std::size_t k = 0; k < pre.w_labels.size(); ++k) {
      if (pre.w_labels[k] == w) wi = k;
    }
    if (ui == pre.u_labels.size() || wi == pre.w_labels.size()) invalid(p, "key names an unknown symbol");
    pre.map[ui][wi] = text(it.value(), p);
  }
  for (std::size_t u = 0; u < pre.u_labels.size(); ++u) {
    for (std::size_t w = 0; w < pre.w_labels.size(); ++w) {
      if (pre.map[u][w].empty()) {
        throw Error(ErrorCode::kPartialPrecoder,
                    "map: no codeword for '" + pre.u_labels[u] + "|" + pre.w_labels[w] + "'");
      }
    }
  }
  if (root.contains("dimB")) pre.dim_b = positive_int(root["dimB"], "dimB");
  if (root.contains("dimC")) pre.dim_c = positive_int(root["dimC"], "dimC");
  return pre;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

json symbol_list(const std::vector<std::string>& labels, const std::vector<double>& prior) {
  json list = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) list.push_back({{"symbol", labels[i]}, {"prior", prior[i]}});
  return list;
}

template <class T>
T expect(Model model, const char* kind, const std::string& path) {
  if (auto* v = std::get_if<T>(&model)) return std::move(*v);
  throw Error(ErrorCode::kValidationError, path + ": expected a " + kind + " model");
}

}  // namespace

Model parse_model(std::string_view text_in) {
  json root;
  try {
    root = json::parse(text_in.begin(), text_in.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  const json& kind_json = field(root, "kind", "");
  if (!kind_json.is_string()) parse_fail("kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "cq-channel") return parse_cq(root);
  if (kind == "density") return density(field(root, "matrix", ""), "matrix");
  if (kind == "kraus-channel") return parse_kraus(root);
  if (kind == "precoder") return parse_precoder(root);
  parse_fail("kind", "unknown model kind '" + kind + "'");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message());
  }
}

std::string serialize_model(const Model& model) {
  json root;
  if (const auto* ch = std::get_if<CQChannel>(&model)) {
    root["kind"] = "cq-channel";
    root["dimB"] = ch->dim_b();
    json inputs = json::array();
    for (int x = 0; x < ch->size(); ++x) {
      inputs.push_back({{"symbol", ch->alphabet()[x]},
                        {"prior", ch->prior()[x]},
                        {"state", matrix_json(ch->output(x).op().matrix())}});
    }
    root["inputs"] = inputs;
  } else if (const auto* rho = std::get_if<DensityOperator>(&model)) {
    root["kind"] = "density";
    root["matrix"] = matrix_json(rho->op().matrix());
  } else if (const auto* k = std::get_if<KrausChannel>(&model)) {
    root["kind"] = "kraus-channel";
    root["in_dim"] = k->in_dim();
    root["out_dim"] = k->out_dim();
    json list = json::array();
    for (const auto& m : k->kraus()) list.push_back(matrix_json(m));
    root["kraus"] = list;
  } else {
    const auto& pre = std::get<Precoder>(model);
    root["kind"] = "precoder";
    root["u"] = symbol_list(pre.u_labels, pre.pu);
    root[pre.second_name] = symbol_list(pre.w_labels, pre.pw);
    json map = json::object();
    for (std::size_t u = 0; u < pre.u_labels.size(); ++u) {
      for (std::size_t w = 0; w < pre.w_labels.size(); ++w) map[pre.u_labels[u] + "|" + pre.w_labels[w]] = pre.map[u][w];
    }
    root["map"] = map;
    if (pre.dim_b > 0) root["dimB"] = pre.dim_b;
    if (pre.dim_c > 0) root["dimC"] = pre.dim_c;
  }
  return root.dump(2);
}

CQChannel load_cq_channel(const std::string& path) { return expect<CQChannel>(load_model(path), "cq-channel", path); }
DensityOperator load_density(const std::string& path) {
  return expect<DensityOperator>(load_model(path), "density", path);
}
KrausChannel load_kraus_channel(const std::string& path) {
  return expect<KrausChannel>(load_model(path), "kraus-channel", path);
}
Precoder load_precoder(const std::string& path) { return expect<Precoder>(load_model(path), "precoder", path); }

}  // namespace oneshot
