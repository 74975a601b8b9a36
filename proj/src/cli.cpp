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

#include "oneshot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oneshot/checks.hpp"
#include "oneshot/coding_bounds.hpp"
#include "oneshot/coding_simulator.hpp"
#include "oneshot/discrimination.hpp"
#include "oneshot/divergences.hpp"
#include "oneshot/error.hpp"
#include "oneshot/model_io.hpp"

namespace oneshot::cli {
namespace {

using Json = nlohmann::ordered_json;

// Information quantities are scaled by --bits; probabilities and counts are not.
enum class Unit { kPlain, kNats, kNatsSquared };

struct Value {
  std::string key;
  double number;
  Unit unit;
};

struct Report {
  std::string protocol;
  std::string digest;
  std::vector<Value> values;
  Json extra = Json::object();  // non-scalar values (exponent grid)
  Json diagnostics = Json::object();
  std::vector<std::string> table_header;  // CSV rows when not one per report
  std::vector<std::vector<Json>> table_rows;
  int exit_code = kExitOk;

  void add(const std::string& key, double v, Unit unit = Unit::kPlain) { values.push_back({key, v, unit}); }
};

struct Options {
  std::string format = "json";
  bool bits = false;
  int threads = 0;

  std::string model, precoder, tau, theta, theta_a, theta_b, rho, sigma;
  long long messages = 0, ma = 0, mb = 0, mc = 0;
  bool strengthened = false;
  std::vector<int> shape, shape_a, shape_b, out_shape;
  int dim_b = 0, dim_c = 0;

  std::string mode = "exact";
  long long trials = 1000;
  std::uint64_t seed = 0;

  double eps = 0.1, delta = 0.01, alpha = 0.5, rate = 0.0, order = 0.75, r = 0.1;
  int grid_steps = 99;
  long long n = 1000;

  long long check_trials = 500;
  int dim = 0;
  std::uint64_t check_seed = 1;
};

double scaled(double v, Unit unit, bool bits) {
  if (!bits) return v;
  const double ln2 = std::numbers::ln2;
  switch (unit) {
    case Unit::kNats:
      return v / ln2;
    case Unit::kNatsSquared:
      return v / (ln2 * ln2);
    case Unit::kPlain:
      break;
  }
  return v;
}

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string csv_cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream s;
    s << std::setprecision(17) << j.get<double>();
    return s.str();
  }
  return j.dump();
}

void emit(const Report& report, const Options& opt, std::ostream& out) {
  if (opt.format == "csv") {
    if (!report.table_header.empty()) {
      for (std::size_t i = 0; i < report.table_header.size(); ++i) out << (i ? "," : "") << report.table_header[i];
      out << "\n";
      for (const auto& row : report.table_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << "\n";
      }
      return;
    }
    out << "protocol,inputs_digest";
    for (const auto& v : report.values) out << "," << v.key;
    out << "\n" << report.protocol << "," << report.digest;
    for (const auto& v : report.values) out << "," << csv_cell(number(scaled(v.number, v.unit, opt.bits)));
    out << "\n";
    return;
  }
  Json doc;
  doc["protocol"] = report.protocol;
  doc["inputs_digest"] = report.digest;
  Json values = Json::object();
  for (const auto& v : report.values) values[v.key] = number(scaled(v.number, v.unit, opt.bits));
  for (const auto& [key, val] : report.extra.items()) values[key] = val;
  doc["values"] = values;
  Json diagnostics = report.diagnostics;
  diagnostics["units"] = opt.bits ? "bits" : "nats";
  doc["diagnostics"] = diagnostics;
  out << doc.dump(2) << "\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kBadM:
      return kExitUsage;
    case ErrorCode::kNumericalFailure:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

SubsystemShape make_shape(const std::vector<int>& dims, std::size_t factors, const char* flag) {
  if (dims.size() != factors) {
    std::ostringstream msg;
    msg << flag << " needs " << factors << " comma-separated dimensions";
    throw Error(ErrorCode::kUsage, msg.str());
  }
  return SubsystemShape(dims);
}

void add_bound(Report& rep, const BoundReport& b, const std::string& suffix, bool strengthened) {
  rep.add("bound" + suffix, b.bound);
  if (strengthened && b.strengthened_bound) rep.add("strengthened_bound" + suffix, *b.strengthened_bound);
  for (const auto& [key, v] : b.components) rep.add(key + suffix, v, Unit::kNats);
  for (const auto& [key, flag] : b.flags) rep.diagnostics[key + suffix] = flag;
}

Report bound_report(const std::string& protocol, const std::vector<std::string>& inputs) {
  Report rep;
  rep.protocol = protocol;
  rep.digest = digest_files(inputs);
  return rep;
}

void add_simulation(Report& rep, const SimulationResult& s, const std::string& suffix) {
  rep.add("mean_error" + suffix, s.mean_error);
  rep.add("bound" + suffix, s.bound_checked);
  if (s.strengthened_bound) rep.add("strengthened_bound" + suffix, *s.strengthened_bound);
  if (s.mode == SimulationMode::kMonteCarlo) rep.add("std_error" + suffix, s.std_error);
  rep.diagnostics["certified" + suffix] = s.certified;
  if (s.strengthened_certified) rep.diagnostics["strengthened_certified" + suffix] = *s.strengthened_certified;
  if (!s.certified || (s.strengthened_certified && !*s.strengthened_certified)) rep.exit_code = kExitCheckFailed;
}

void add_simulation_meta(Report& rep, const SimulationResult& s) {
  rep.diagnostics["mode"] = s.mode == SimulationMode::kExact ? "exact" : "mc";
  if (s.mode == SimulationMode::kMonteCarlo) {
    rep.diagnostics["trials"] = s.trials;
    rep.diagnostics["seed"] = *s.seed;
  }
}

BroadcastModel load_broadcast(const Options& opt) {
  const Precoder pre = load_precoder(opt.precoder);
  const int db = opt.dim_b > 0 ? opt.dim_b : pre.dim_b;
  const int dc = opt.dim_c > 0 ? opt.dim_c : pre.dim_c;
  if (db <= 0 || dc <= 0) throw Error(ErrorCode::kUsage, "receiver dimensions missing: set dimB/dimC or --dim-b/--dim-c");
  return BroadcastModel::make(load_cq_channel(opt.model), pre, db, dc);
}

Report check_report(const CheckReport& c, const Options& opt) {
  Report rep;
  rep.protocol = "check_" + c.battery;
  rep.digest = digest_files({});
  rep.table_header = {"property", "worst_margin", "tolerance", "cases", "passed"};
  for (const auto& p : c.properties) {
    rep.add(p.property, p.worst);
    rep.diagnostics[p.property + "_passed"] = p.passed();
    rep.table_rows.push_back({p.property, number(p.worst), p.tolerance, p.cases, p.passed()});
  }
  rep.diagnostics["passed"] = c.passed();
  rep.diagnostics["trials_per_dim"] = opt.check_trials;
  rep.diagnostics["seed"] = opt.check_seed;
  if (!c.passed()) rep.exit_code = kExitCheckFailed;
  return rep;
}

CheckOptions check_options(const Options& opt) {
  CheckOptions c;
  c.trials = opt.check_trials;
  c.seed = opt.check_seed;
  if (opt.dim > 0) c.dims = {opt.dim};
  return c;
}

using Handler = std::function<Report()>;

}  // namespace

std::string digest_files(const std::vector<std::string>& paths) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kParseError, path + ": cannot open file");
    char c;
    while (in.get(c)) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"One-shot achievability bounds and random-coding simulations", "oneshot"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--bits", opt.bits, "Display information quantities in bits");
  app.add_option("--threads", opt.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = parent->add_subcommand(name, help);
    handlers.emplace_back(sub, std::move(h));
    return sub;
  };
  auto model_opt = [&](CLI::App* sub, std::string& target, const std::string& flag, const std::string& help) {
    sub->add_option(flag, target, help)->required()->check(CLI::ExistingFile);
  };
  auto messages_opt = [&](CLI::App* sub, long long& target, const std::string& flag) {
    sub->add_option(flag, target, "Number of messages")->required()->check(CLI::PositiveNumber);
  };
  auto shape_opt = [&](CLI::App* sub, std::vector<int>& target, const std::string& flag, const std::string& help) {
    sub->add_option(flag, target, help)->required()->delimiter(',')->check(CLI::PositiveNumber);
  };

  // bound
  CLI::App* bound = app.add_subcommand("bound", "Closed-form error bounds");
  bound->require_subcommand(1);
  {
    CLI::App* s = leaf(bound, "cq", "c-q channel coding", [&] {
      const CQChannel ch = load_cq_channel(opt.model);
      Report rep = bound_report("cq", {opt.model});
      add_bound(rep, cq_bound(ch, opt.messages), "", opt.strengthened);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file");
    messages_opt(s, opt.messages, "--messages");
    s->add_flag("--strengthened", opt.strengthened, "Also report the strengthened bound");
  }
  {
    CLI::App* s = leaf(bound, "cqsw", "Source coding with quantum side information", [&] {
      const CQState state = build_cq_joint(load_cq_channel(opt.model));
      Report rep = bound_report("cqsw", {opt.model});
      add_bound(rep, cqsw_bound(state, opt.messages), "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q source file (prior and side-information states)");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(bound, "packing", "Position-based packing", [&] {
      const DensityOperator rho = load_density(opt.model);
      const DensityOperator tau = load_density(opt.tau);
      Report rep = bound_report("packing", {opt.model, opt.tau});
      add_bound(rep, packing_bound(rho, make_shape(opt.shape, 2, "--shape"), tau, opt.messages), "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "rho_RB density file");
    model_opt(s, opt.tau, "--tau", "tau_R density file");
    shape_opt(s, opt.shape, "--shape", "d_R,d_B");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(bound, "ea", "Entanglement-assisted coding", [&] {
      const KrausChannel ch = load_kraus_channel(opt.model);
      const DensityOperator theta = load_density(opt.theta);
      Report rep = bound_report("ea", {opt.model, opt.theta});
      add_bound(rep, ea_bound(ch, theta, make_shape(opt.shape, 2, "--shape"), opt.messages), "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "Kraus channel file");
    model_opt(s, opt.theta, "--theta", "theta_RA density file");
    shape_opt(s, opt.shape, "--shape", "d_R,d_A");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(bound, "mac", "Two-sender multiple access", [&] {
      const MacChannel mac = MacChannel::from_product_channel(load_cq_channel(opt.model));
      Report rep = bound_report("mac", {opt.model});
      add_bound(rep, mac_bound(mac, opt.ma, opt.mb), "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file with x|y labels");
    messages_opt(s, opt.ma, "--ma");
    messages_opt(s, opt.mb, "--mb");
  }
  {
    CLI::App* s = leaf(bound, "broadcast", "Two-receiver broadcast", [&] {
      const BroadcastModel model = load_broadcast(opt);
      Report rep = bound_report("broadcast", {opt.model, opt.precoder});
      const auto [b, c] = broadcast_bounds(model, opt.mb, opt.mc);
      add_bound(rep, b, "_b", false);
      add_bound(rep, c, "_c", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file with outputs on B (x) C");
    model_opt(s, opt.precoder, "--precoder", "Precoder file (u, v) -> x");
    messages_opt(s, opt.mb, "--mb");
    messages_opt(s, opt.mc, "--mc");
    s->add_option("--dim-b", opt.dim_b, "Receiver B dimension")->check(CLI::PositiveNumber);
    s->add_option("--dim-c", opt.dim_c, "Receiver C dimension")->check(CLI::PositiveNumber);
  }
  {
    CLI::App* s = leaf(bound, "state-info", "Causal state information at the encoder", [&] {
      const StateInfoModel model = StateInfoModel::make(load_cq_channel(opt.model), load_precoder(opt.precoder));
      Report rep = bound_report("state_info", {opt.model, opt.precoder});
      add_bound(rep, state_info_bound(model, opt.messages), "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file with x|s labels");
    model_opt(s, opt.precoder, "--precoder", "Precoder file (u, s) -> x");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(bound, "ea-mac", "Entanglement-assisted multiple access", [&] {
      const KrausChannel ch = load_kraus_channel(opt.model);
      const DensityOperator ta = load_density(opt.theta_a);
      const DensityOperator tb = load_density(opt.theta_b);
      Report rep = bound_report("ea_mac", {opt.model, opt.theta_a, opt.theta_b});
      add_bound(rep,
                ea_mac_bound(ch, ta, make_shape(opt.shape_a, 2, "--shape-a"), tb, make_shape(opt.shape_b, 2, "--shape-b"),
                             opt.ma, opt.mb),
                "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "Kraus channel file on A (x) B");
    model_opt(s, opt.theta_a, "--theta-a", "theta_{R_A A} density file");
    model_opt(s, opt.theta_b, "--theta-b", "theta_{R_B B} density file");
    shape_opt(s, opt.shape_a, "--shape-a", "d_RA,d_A");
    shape_opt(s, opt.shape_b, "--shape-b", "d_RB,d_B");
    messages_opt(s, opt.ma, "--ma");
    messages_opt(s, opt.mb, "--mb");
  }
  {
    CLI::App* s = leaf(bound, "ea-broadcast", "Entanglement-assisted broadcast", [&] {
      const KrausChannel ch = load_kraus_channel(opt.model);
      const DensityOperator theta = load_density(opt.theta);
      Report rep = bound_report("ea_broadcast", {opt.model, opt.theta});
      const SubsystemShape outs = make_shape(opt.out_shape, 2, "--out-shape");
      const auto [b, c] = ea_broadcast_bounds(ch, theta, make_shape(opt.shape, 3, "--shape"), outs.dim(0), outs.dim(1),
                                              opt.mb, opt.mc);
      add_bound(rep, b, "_b", false);
      add_bound(rep, c, "_c", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "Kraus channel file A -> B (x) C");
    model_opt(s, opt.theta, "--theta", "theta_{R_B R_C A} density file");
    shape_opt(s, opt.shape, "--shape", "d_RB,d_RC,d_A");
    shape_opt(s, opt.out_shape, "--out-shape", "d_B,d_C");
    messages_opt(s, opt.mb, "--mb");
    messages_opt(s, opt.mc, "--mc");
  }
  {
    CLI::App* s = leaf(bound, "ea-state-info", "Entanglement-assisted coding with state information", [&] {
      const KrausChannel ch = load_kraus_channel(opt.model);
      const DensityOperator theta = load_density(opt.theta);
      Report rep = bound_report("ea_state_info", {opt.model, opt.theta});
      add_bound(rep, ea_state_info_bound(ch, theta, make_shape(opt.shape, 3, "--shape"), opt.messages), "", false);
      return rep;
    });
    model_opt(s, opt.model, "--model", "Kraus channel file on A (x) S");
    model_opt(s, opt.theta, "--theta", "theta_{RAS} density file");
    shape_opt(s, opt.shape, "--shape", "d_R,d_A,d_S");
    messages_opt(s, opt.messages, "--messages");
  }

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "Random-coding simulations checked against the bounds");
  simulate->require_subcommand(1);
  simulate->add_option("--mode", opt.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  simulate->add_option("--trials", opt.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = simulate->add_option("--seed", opt.seed, "Monte Carlo seed (required for mc)");
  auto sim_config = [&] {
    SimulationConfig c;
    c.threads = opt.threads;
    return c;
  };
  auto is_mc = [&] {
    if (opt.mode != "mc") return false;
    if (seed_opt->count() == 0) throw Error(ErrorCode::kUsage, "--seed is required with --mode mc");
    return true;
  };
  {
    CLI::App* s = leaf(simulate, "cq", "", [&] {
      const CQChannel ch = load_cq_channel(opt.model);
      const SimulationResult r = is_mc() ? cq_random_coding_mc(ch, opt.messages, opt.trials, opt.seed, sim_config())
                                         : cq_random_coding_exact(ch, opt.messages, sim_config());
      Report rep = bound_report("cq", {opt.model});
      add_simulation(rep, r, "");
      add_simulation_meta(rep, r);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(simulate, "cqsw", "", [&] {
      const CQState state = build_cq_joint(load_cq_channel(opt.model));
      const SimulationResult r = is_mc() ? cqsw_mc(state, opt.messages, opt.trials, opt.seed, sim_config())
                                         : cqsw_exact(state, opt.messages, sim_config());
      Report rep = bound_report("cqsw", {opt.model});
      add_simulation(rep, r, "");
      add_simulation_meta(rep, r);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q source file");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(simulate, "packing", "", [&] {
      if (opt.mode == "mc") throw Error(ErrorCode::kUsage, "packing supports --mode exact only");
      const DensityOperator rho = load_density(opt.model);
      const DensityOperator tau = load_density(opt.tau);
      const SimulationResult r =
          packing_exact(rho, make_shape(opt.shape, 2, "--shape"), tau, opt.messages, sim_config());
      Report rep = bound_report("packing", {opt.model, opt.tau});
      add_simulation(rep, r, "");
      add_simulation_meta(rep, r);
      return rep;
    });
    model_opt(s, opt.model, "--model", "rho_RB density file");
    model_opt(s, opt.tau, "--tau", "tau_R density file");
    shape_opt(s, opt.shape, "--shape", "d_R,d_B");
    messages_opt(s, opt.messages, "--messages");
  }
  {
    CLI::App* s = leaf(simulate, "mac", "", [&] {
      const MacChannel mac = MacChannel::from_product_channel(load_cq_channel(opt.model));
      const SimulationResult r = is_mc() ? mac_mc(mac, opt.ma, opt.mb, opt.trials, opt.seed, sim_config())
                                         : mac_exact(mac, opt.ma, opt.mb, sim_config());
      Report rep = bound_report("mac", {opt.model});
      add_simulation(rep, r, "");
      add_simulation_meta(rep, r);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file with x|y labels");
    messages_opt(s, opt.ma, "--ma");
    messages_opt(s, opt.mb, "--mb");
  }
  {
    CLI::App* s = leaf(simulate, "broadcast", "", [&] {
      const BroadcastModel model = load_broadcast(opt);
      const auto [b, c] = is_mc() ? broadcast_mc(model, opt.mb, opt.mc, opt.trials, opt.seed, sim_config())
                                  : broadcast_exact(model, opt.mb, opt.mc, sim_config());
      Report rep = bound_report("broadcast", {opt.model, opt.precoder});
      add_simulation(rep, b, "_b");
      add_simulation(rep, c, "_c");
      add_simulation_meta(rep, b);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file with outputs on B (x) C");
    model_opt(s, opt.precoder, "--precoder", "Precoder file (u, v) -> x");
    messages_opt(s, opt.mb, "--mb");
    messages_opt(s, opt.mc, "--mc");
    s->add_option("--dim-b", opt.dim_b, "Receiver B dimension")->check(CLI::PositiveNumber);
    s->add_option("--dim-c", opt.dim_c, "Receiver C dimension")->check(CLI::PositiveNumber);
  }
  {
    CLI::App* s = leaf(simulate, "state-info", "", [&] {
      const StateInfoModel model = StateInfoModel::make(load_cq_channel(opt.model), load_precoder(opt.precoder));
      const SimulationResult r = is_mc() ? state_info_mc(model, opt.messages, opt.trials, opt.seed, sim_config())
                                         : state_info_exact(model, opt.messages, sim_config());
      Report rep = bound_report("state_info", {opt.model, opt.precoder});
      add_simulation(rep, r, "");
      add_simulation_meta(rep, r);
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file with x|s labels");
    model_opt(s, opt.precoder, "--precoder", "Precoder file (u, s) -> x");
    messages_opt(s, opt.messages, "--messages");
  }

  // rate, exponent, second-order
  {
    CLI::App* s = leaf(&app, "rate", "One-shot rates: ours, Hayashi-Nagaoka, Beigi-Gohari", [&] {
      const RateReport r = cq_rate(load_cq_channel(opt.model), opt.eps, opt.delta);
      Report rep = bound_report("rate", {opt.model});
      rep.add("ours", r.ours, Unit::kNats);
      rep.add("hayashi_nagaoka", r.hayashi_nagaoka, Unit::kNats);
      rep.add("beigi_gohari", r.beigi_gohari, Unit::kNats);
      rep.add("dh", r.dh, Unit::kNats);
      rep.add("ds", r.ds, Unit::kNats);
      // One-shot rates can be negative; the clipped values are a convenience.
      rep.add("ours_effective", std::max(0.0, r.ours), Unit::kNats);
      rep.add("hayashi_nagaoka_effective", std::max(0.0, r.hayashi_nagaoka), Unit::kNats);
      rep.add("beigi_gohari_effective", std::max(0.0, r.beigi_gohari), Unit::kNats);
      rep.diagnostics["eps"] = opt.eps;
      rep.diagnostics["delta"] = opt.delta;
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file");
    s->add_option("--eps", opt.eps, "Target error")->required();
    s->add_option("--delta", opt.delta, "Slack in (0, eps)")->required();
  }
  {
    CLI::App* s = leaf(&app, "exponent", "Random-coding error exponent over the alpha grid", [&] {
      AlphaGrid grid;
      grid.steps = opt.grid_steps;
      const ExponentReport e = cq_exponent(load_cq_channel(opt.model), opt.rate, grid);
      Report rep = bound_report("exponent", {opt.model});
      rep.add("rate", e.rate, Unit::kNats);
      rep.add("best_alpha", e.best_alpha);
      rep.add("exponent", e.exponent, Unit::kNats);
      rep.add("mutual_information", e.reference_information, Unit::kNats);
      Json points = Json::array();
      rep.table_header = {"alpha", "integrand"};
      for (const auto& [a, v] : e.grid) {
        const double shown = scaled(v, Unit::kNats, opt.bits);
        points.push_back({{"alpha", a}, {"integrand", number(shown)}});
        rep.table_rows.push_back({a, number(shown)});
      }
      rep.extra["grid"] = points;
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file");
    s->add_option("--rate", opt.rate, "Rate in nats per message")->required();
    s->add_option("--grid-steps", opt.grid_steps, "Grid points in (1/2, 1)")->check(CLI::PositiveNumber);
  }
  {
    CLI::App* s = leaf(&app, "second-order", "Second-order rate estimate", [&] {
      const CQState state = build_cq_joint(load_cq_channel(opt.model));
      const double info = cq_mutual_information(state);
      const double var = cq_mutual_information_variance(state);
      Report rep = bound_report("second_order", {opt.model});
      rep.add("mutual_information", info, Unit::kNats);
      rep.add("variance", var, Unit::kNatsSquared);
      rep.add("log_messages", second_order_rate(info, var, opt.eps, opt.n), Unit::kNats);
      rep.diagnostics["eps"] = opt.eps;
      rep.diagnostics["n"] = opt.n;
      return rep;
    });
    model_opt(s, opt.model, "--model", "c-q channel file");
    s->add_option("--eps", opt.eps, "Target error")->required();
    s->add_option("--n", opt.n, "Blocklength")->required()->check(CLI::PositiveNumber);
  }

  // divergence
  CLI::App* divergence = app.add_subcommand("divergence", "Divergences between two density operators");
  divergence->require_subcommand(1);
  auto pair_opts = [&](CLI::App* s) {
    model_opt(s, opt.rho, "--rho", "rho density file");
    model_opt(s, opt.sigma, "--sigma", "sigma density file");
  };
  auto divergence_leaf = [&](const std::string& name, const std::string& help, bool needs_alpha, bool needs_eps,
                             std::function<DivergenceValue(const DensityOperator&, const DensityOperator&)> f) {
    CLI::App* s = leaf(divergence, name, help, [&, name, f] {
      const DensityOperator rho = load_density(opt.rho);
      const DensityOperator sigma = load_density(opt.sigma);
      const DivergenceValue d = f(rho, sigma);
      Report rep = bound_report("divergence_" + name, {opt.rho, opt.sigma});
      rep.add("divergence", d.as_double(), name == "variance" ? Unit::kNatsSquared : Unit::kNats);
      rep.diagnostics["kind"] = std::string(divergence_kind_name(d.kind()));
      rep.diagnostics["infinite"] = d.is_infinite();
      return rep;
    });
    pair_opts(s);
    if (needs_alpha) s->add_option("--alpha", opt.alpha, "Order")->required();
    if (needs_eps) s->add_option("--eps", opt.eps, "Smoothing parameter")->required();
  };
  divergence_leaf("petz", "Petz-Renyi divergence", true, false,
                  [&](const DensityOperator& a, const DensityOperator& b) { return petz_renyi(a, b, opt.alpha); });
  divergence_leaf("kl", "Umegaki relative entropy", false, false,
                  [](const DensityOperator& a, const DensityOperator& b) { return relative_entropy(a, b); });
  divergence_leaf("variance", "Relative entropy variance", false, false,
                  [](const DensityOperator& a, const DensityOperator& b) { return relative_entropy_variance(a, b); });
  divergence_leaf("collision", "Sandwiched order-2 divergence", false, false,
                  [](const DensityOperator& a, const DensityOperator& b) { return collision_divergence(a.op(), b.op()); });
  divergence_leaf("max", "Max-relative entropy", false, false,
                  [](const DensityOperator& a, const DensityOperator& b) { return max_relative_entropy(a, b); });
  divergence_leaf("ht", "Hypothesis-testing divergence", false, true,
                  [&](const DensityOperator& a, const DensityOperator& b) { return ht_divergence(a, b, opt.eps); });
  divergence_leaf("is", "Information-spectrum divergence", false, true,
                  [&](const DensityOperator& a, const DensityOperator& b) { return is_divergence(a, b, opt.eps); });

  // hoeffding
  {
    CLI::App* s = leaf(&app, "hoeffding", "PGM test with the Hoeffding-type guarantee", [&] {
      const HoeffdingResult h = hoeffding_pgm(load_density(opt.rho), load_density(opt.sigma), opt.order, opt.r);
      Report rep = bound_report("hoeffding", {opt.rho, opt.sigma});
      rep.add("mu", h.mu);
      rep.add("divergence", h.divergence.as_double(), Unit::kNats);
      rep.add("type1_bound", h.type1_bound);
      rep.add("type2_bound", h.type2_bound);
      rep.add("type1_actual", h.type1_actual);
      rep.add("type2_actual", h.type2_actual);
      const bool ok = h.type1_actual <= h.type1_bound + 1e-9 && h.type2_actual <= h.type2_bound + 1e-9;
      rep.diagnostics["certified"] = ok;
      if (!ok) rep.exit_code = kExitCheckFailed;
      return rep;
    });
    pair_opts(s);
    s->add_option("--order", opt.order, "Order alpha in (0, 1)")->required();
    s->add_option("--r", opt.r, "Type-II exponent target r > 0")->required();
  }

  // check
  CLI::App* check = app.add_subcommand("check", "Property batteries");
  check->require_subcommand(1);
  check->add_option("--trials", opt.check_trials, "Random cases per dimension")->check(CLI::PositiveNumber);
  check->add_option("--dim", opt.dim, "Single dimension (default: 2,3,4,6)")->check(CLI::Range(1, 64));
  check->add_option("--seed", opt.check_seed, "Sampler seed");
  leaf(check, "facts", "Properties of the noncommutative minimal",
       [&] { return check_report(run_fact_checks(check_options(opt)), opt); });
  leaf(check, "hn", "Hayashi-Nagaoka operator inequality",
       [&] { return check_report(run_hn_checks(check_options(opt)), opt); });
  leaf(check, "trace-chain", "Trace inequality chain for the parallel sum",
       [&] { return check_report(run_trace_chain_checks(check_options(opt)), opt); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    try {
      const Report rep = handler();
      emit(rep, opt, out);
      if (rep.exit_code == kExitCheckFailed) err << "check failed\n";
      return rep.exit_code;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace oneshot::cli
