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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oneshot/checks.hpp"
#include "oneshot/cli.hpp"
#include "oneshot/coding_bounds.hpp"
#include "oneshot/coding_simulator.hpp"
#include "oneshot/discrimination.hpp"
#include "oneshot/divergences.hpp"
#include "oneshot/model_io.hpp"
#include "oneshot/random.hpp"

using namespace oneshot;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DensityOperator diag_state(std::vector<double> v) { return DensityOperator(HermitianOperator::diagonal(v)); }

CQChannel labelled(const CQChannel& ch, std::vector<std::string> labels, std::vector<double> prior) {
  return CQChannel(std::move(labels), std::move(prior), ch.outputs());
}

// The random channel set shared by criteria 5 and 8.
std::vector<CQChannel> channel_set() {
  InstanceSampler s(2024);
  std::vector<CQChannel> out;
  for (int i = 0; i < 60; ++i) out.push_back(s.cq_channel(s.integer(2, 4), s.integer(2, 3)));
  return out;
}

double worst(const CheckReport& r, const std::string& property) {
  for (const auto& p : r.properties) {
    if (p.property == property) return p.worst;
  }
  return -1.0;
}

Verdict fact_battery() {
  const auto t0 = std::chrono::steady_clock::now();
  CheckOptions opt;
  opt.trials = 500;
  opt.dims = {2, 3, 4, 6};
  opt.seed = 1;
  const CheckReport r = run_fact_checks(opt);
  const double secs = seconds_since(t0);
  double w = 1.0;
  for (const auto& p : r.properties) w = std::min(w, p.worst);
  return {r.passed() && w >= -1e-8 && secs < 30.0, fmt("worst margin %.3g over 2000 pairs, %.1f s", w, secs)};
}

Verdict helstrom_optimality() {
  InstanceSampler s(202);
  double worst_gap = 0.0, worst_beat = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = s.integer(2, 4);
    const double p = s.uniform(0.1, 0.9);
    const HermitianOperator a = s.density(d).op() * p;
    const HermitianOperator b = s.density(d).op() * (1.0 - p);
    const HelstromResult h = helstrom(a, b);
    const HermitianOperator& t = h.optimal_test.op();
    const HermitianOperator id = HermitianOperator::identity(d);
    const double err = trace_product(a, id - t) + trace_product(b, t);
    const double target = nc_min_trace(a, b);
    worst_gap = std::max({worst_gap, std::abs(err - target), std::abs(h.error - target)});
    for (int k = 0; k < 1000; ++k) {
      const HermitianOperator q = s.test(d);
      worst_beat = std::max(worst_beat, target - (trace_product(a, id - q) + trace_product(b, q)));
    }
  }
  return {worst_gap <= 1e-9 && worst_beat <= 1e-9,
          fmt("max |error - Tr[A^B]| %.3g, max random-test advantage %.3g", worst_gap, worst_beat)};
}

Verdict hn_inequality() {
  CheckOptions opt;
  opt.trials = 200;
  opt.dims = {2, 3, 4};
  opt.seed = 3;
  const CheckReport r = run_hn_checks(opt);
  const double w = worst(r, "hn_margin");
  return {w >= -1e-8 && r.properties.front().cases >= 500, fmt("min margin %.3g over %.0f triples", w, r.properties.front().cases)};
}

Verdict trace_chain() {
  CheckOptions opt;
  opt.trials = 150;
  opt.dims = {2, 3, 4, 6};
  opt.seed = 4;
  const CheckReport r = run_trace_chain_checks(opt);
  const double a = worst(r, "lhs_le_mid"), b = worst(r, "mid_le_rhs");
  return {a >= -2e-9 && b >= -2e-9, fmt("min(mid-lhs) %.3g, min(rhs-mid) %.3g over 600 pairs", a, b)};
}

Verdict theorem_cq(const std::vector<CQChannel>& channels) {
  double worst_margin = 1.0, worst_strong = 1.0;
  int cases = 0;
  for (const auto& ch : channels) {
    for (long long m : {2LL, 3LL}) {
      const SimulationResult r = cq_random_coding_exact(ch, m);
      worst_margin = std::min(worst_margin, r.bound_checked - r.mean_error);
      worst_strong = std::min(worst_strong, *r.strengthened_bound - r.mean_error);
      ++cases;
    }
  }
  const CQChannel noiseless(
      {"0", "1"}, {0.5, 0.5}, {diag_state({1.0, 0.0}), diag_state({0.0, 1.0})});
  const SimulationResult hand = cq_random_coding_exact(noiseless, 2);
  const bool hand_ok = std::abs(hand.mean_error - 0.25) <= 1e-12 && std::abs(hand.bound_checked - 0.5) <= 1e-12;
  std::string detail = fmt("%.0f cases, min(bound - error) %.3g, min(strengthened - error) %.3g", cases, worst_margin,
                           worst_strong);
  detail += fmt("; noiseless M=2 exact %.6g vs bound %.6g", hand.mean_error, hand.bound_checked);
  return {worst_margin >= -1e-9 && worst_strong >= -1e-9 && hand_ok, detail};
}

Verdict theorem_packing() {
  InstanceSampler s(606);
  double w = 1.0;
  for (int i = 0; i < 24; ++i) {
    const DensityOperator rho = s.density(4);
    const DensityOperator tau = s.density(2);
    const long long m = i % 2 == 0 ? 2 : 3;
    const SimulationResult r = packing_exact(rho, {2, 2}, tau, m);
    w = std::min(w, r.bound_checked - r.mean_error);
  }
  return {w >= -1e-9, fmt("24 instances, min(bound - error) %.3g", w)};
}

Verdict protocol_certifications() {
  InstanceSampler s(707);
  double w_cqsw = 1.0, w_mac = 1.0, w_bc = 1.0, w_si = 1.0;
  for (int i = 0; i < 12; ++i) {
    const CQState st = build_cq_joint(s.cq_channel(s.integer(2, 4), s.integer(1, 3)));
    const SimulationResult r = cqsw_exact(st, s.integer(2, 3));
    w_cqsw = std::min(w_cqsw, r.bound_checked - r.mean_error);
  }
  for (int i = 0; i < 12; ++i) {
    const std::vector<double> px = s.probability(2), py = s.probability(2);
    const CQChannel raw = s.cq_channel(4, s.integer(2, 3));
    const CQChannel ch = labelled(raw, {"0|0", "0|1", "1|0", "1|1"},
                                  {px[0] * py[0], px[0] * py[1], px[1] * py[0], px[1] * py[1]});
    const MacChannel mac = MacChannel::from_product_channel(ch);
    const SimulationResult r = mac_exact(mac, s.integer(1, 3), s.integer(1, 3));
    w_mac = std::min(w_mac, r.bound_checked - r.mean_error);
  }
  for (int i = 0; i < 12; ++i) {
    const CQChannel ch = s.cq_channel(3, 4);
    Precoder pre;
    pre.u_labels = {"u0", "u1"};
    pre.w_labels = {"v0", "v1"};
    pre.pu = s.probability(2);
    pre.pw = s.probability(2);
    pre.map.assign(2, std::vector<std::string>(2));
    for (auto& row : pre.map) {
      for (auto& x : row) x = std::to_string(s.integer(0, 2));
    }
    const BroadcastModel model = BroadcastModel::make(ch, pre, 2, 2);
    const auto [b, c] = broadcast_exact(model, s.integer(2, 3), s.integer(2, 3));
    w_bc = std::min({w_bc, b.bound_checked - b.mean_error, c.bound_checked - c.mean_error});
  }
  for (int i = 0; i < 12; ++i) {
    const CQChannel raw = s.cq_channel(4, 2);
    const CQChannel ch = labelled(raw, {"0|s0", "0|s1", "1|s0", "1|s1"}, {0.25, 0.25, 0.25, 0.25});
    Precoder pre;
    pre.second_name = "s";
    pre.u_labels = {"a", "b", "c"};
    pre.w_labels = {"s0", "s1"};
    pre.pu = s.probability(3);
    pre.pw = s.probability(2);
    pre.map.assign(3, std::vector<std::string>(2));
    for (auto& row : pre.map) {
      for (auto& x : row) x = std::to_string(s.integer(0, 1));
    }
    const StateInfoModel model = StateInfoModel::make(ch, pre);
    const SimulationResult r = state_info_exact(model, s.integer(2, 3));
    w_si = std::min(w_si, r.bound_checked - r.mean_error);
  }
  const double w = std::min({w_cqsw, w_mac, w_bc, w_si});
  std::string detail = fmt("min(bound - error): cqsw %.3g, mac %.3g, broadcast %.3g", w_cqsw, w_mac, w_bc);
  detail += fmt(", state-info %.3g (12 instances each)", w_si);
  return {w >= -1e-9, detail};
}

Verdict relaxation_chain(const std::vector<CQChannel>& channels) {
  double w = 1.0;
  for (const auto& ch : channels) {
    for (long long m : {2LL, 3LL}) w = std::min(w, cq_relaxation_bound(ch, m) - cq_bound(ch, m).bound);
  }
  // Two-fold products: symbols (x1, x2), outputs rho^x1 (x) rho^x2.
  double add = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const CQChannel& ch = channels[i];
    std::vector<std::string> labels;
    std::vector<double> prior;
    std::vector<DensityOperator> outs;
    for (int a = 0; a < ch.size(); ++a) {
      for (int b = 0; b < ch.size(); ++b) {
        labels.push_back(std::to_string(a) + "," + std::to_string(b));
        prior.push_back(ch.prior()[a] * ch.prior()[b]);
        outs.emplace_back(tensor_product(ch.output(a).op(), ch.output(b).op()));
      }
    }
    const CQState single = build_cq_joint(ch);
    const CQState pair = build_cq_joint(CQChannel(labels, prior, outs));
    for (double alpha : {0.2, 0.5, 0.8, 1.5}) {
      add = std::max(add, std::abs(cq_mutual_renyi(pair, alpha).value() - 2.0 * cq_mutual_renyi(single, alpha).value()));
    }
  }
  return {w >= -1e-9 && add <= 1e-8, fmt("min(relaxation - bound) %.3g; max additivity defect %.3g", w, add)};
}

Verdict rate_ordering(const std::vector<CQChannel>& channels) {
  double gap = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const double delta = 0.01 * static_cast<double>(i + 1);
    const RateReport r = cq_rate(channels[i], 0.3, delta);
    if (std::isfinite(r.ours)) gap = std::max(gap, std::abs(r.ours - r.hayashi_nagaoka - std::log(4.0 / delta)));
  }
  InstanceSampler s(909);
  double chain = 1.0;
  for (int i = 0; i < 60; ++i) {
    const int d = s.integer(2, 4);
    const DensityOperator rho = s.density(d);
    const DensityOperator sigma = s.density(d, i % 3 == 0 ? -1 : d);
    const double eps = s.uniform(0.1, 0.9);
    const double dp = eps * s.uniform(0.1, 0.9);
    const double dh = ht_divergence(rho, sigma, eps).as_double();
    const double ds = is_divergence(rho, sigma, eps).as_double();
    const double lower = ht_divergence(rho, sigma, eps - dp).as_double() - std::log(1.0 / dp);
    chain = std::min({chain, dh - ds, ds - lower});
  }
  const double joint_dh = ht_divergence(diag_state({0.5, 0.0, 0.0, 0.5}), diag_state({0.25, 0.25, 0.25, 0.25}), 0.25).value();
  const double ds5 = is_divergence(diag_state({0.5, 0.5}), diag_state({0.9, 0.1}), 0.5).value();
  const double e1 = std::abs(joint_dh + std::log(0.375)), e2 = std::abs(ds5 - std::log(5.0));
  std::string detail = fmt("max |ours - HN - log(4/delta)| %.3g; min chain margin %.3g", gap, chain);
  detail += fmt("; worked example errors %.3g, %.3g", e1, e2);
  return {gap <= 1e-12 && chain >= -1e-6 && e1 <= 1e-9 && e2 <= 1e-9, detail};
}

Verdict hypothesis_testing() {
  InstanceSampler s(1010);
  double pgm_lo = 1.0, pgm_hi = 1.0, hoeff = 1.0, stein = 1.0;
  for (int i = 0; i < 200; ++i) {
    const int d = s.integer(2, 4);
    const double p = s.uniform(0.1, 0.9);
    const std::vector<HermitianOperator> pair{s.density(d).op() * p, s.density(d).op() * (1.0 - p)};
    const double h = helstrom(pair[0], pair[1]).error;
    const double e = pgm_error(pair);
    pgm_lo = std::min(pgm_lo, e - h);
    pgm_hi = std::min(pgm_hi, 2.0 * h - e);
  }
  for (int i = 0; i < 200; ++i) {
    const int d = s.integer(2, 4);
    const DensityOperator rho = s.density(d), sigma = s.density(d, i % 4 == 0 ? -1 : d);
    const HoeffdingResult r = hoeffding_pgm(rho, sigma, s.uniform(0.05, 0.95), s.uniform(0.01, 2.0));
    hoeff = std::min({hoeff, r.type1_bound - r.type1_actual, r.type2_bound - r.type2_actual});
  }
  for (int i = 0; i < 200; ++i) {
    const int d = s.integer(2, 4);
    const DensityOperator rho = s.density(d), sigma = s.density(d, i % 4 == 0 ? -1 : d);
    const double eps = s.uniform(0.05, 0.9);
    const double delta = eps * s.uniform(0.05, 0.95);
    const SteinResult r = stein_pgm(rho, sigma, eps, delta);
    const double bound = r.dh.is_infinite() ? 0.0 : std::exp(-r.dh.value() + std::log(1.0 / delta));
    stein = std::min({stein, bound - r.type2_actual, eps - r.type1_actual});
  }
  std::string detail = fmt("PGM bracket margins %.3g / %.3g", pgm_lo, pgm_hi);
  detail += fmt("; hoeffding %.3g; stein %.3g", hoeff, stein);
  return {pgm_lo >= -1e-8 && pgm_hi >= -1e-8 && hoeff >= -1e-8 && stein >= -1e-8, detail};
}

Verdict divergence_values() {
  const DensityOperator rho = diag_state({0.5, 0.5}), sigma = diag_state({0.9, 0.1});
  // Classical formulas on the two outcomes.
  const double l1 = std::log(0.5 / 0.9), l2 = std::log(0.5 / 0.1);
  const double petz = std::log(0.25 / 0.9 + 0.25 / 0.1);
  const double kl = 0.5 * l1 + 0.5 * l2;
  const double var = 0.5 * l1 * l1 + 0.5 * l2 * l2 - kl * kl;
  const double dmax = std::max(l1, l2);
  const double errs[] = {std::abs(petz_renyi(rho, sigma, 2.0).value() - petz),
                         std::abs(relative_entropy(rho, sigma).value() - kl),
                         std::abs(relative_entropy_variance(rho, sigma).value() - var),
                         std::abs(max_relative_entropy(rho, sigma).value() - dmax)};
  const double quoted[] = {std::abs(petz - 1.02165), std::abs(kl - 0.51083), std::abs(var - 1.2069),
                           std::abs(dmax - std::log(5.0))};
  const double phi = std::abs(inverse_normal_cdf(0.975) - 1.959964);
  double e = 0.0;
  for (double x : errs) e = std::max(e, x);
  double q = 0.0;
  for (double x : quoted) q = std::max(q, x);
  return {e <= 1e-4 && q <= 1e-4 && phi <= 1e-6,
          fmt("max error vs oracles %.3g, oracle vs quoted %.3g, quantile error %.3g", e, q, phi)};
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("oneshot_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  InstanceSampler s(1212);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string cq = write("cq.json", serialize_model(s.cq_channel(3, 2)));
  const CQChannel raw = s.cq_channel(4, 2);
  const std::string mac = write("mac.json", serialize_model(labelled(raw, {"0|0", "0|1", "1|0", "1|1"}, {0.24, 0.16, 0.36, 0.24})));
  const std::string bc = write("bc.json", serialize_model(s.cq_channel(3, 4)));
  const std::string bc_pre = write("bc_pre.json", R"({"kind":"precoder","u":[{"symbol":"a","prior":0.4},{"symbol":"b","prior":0.6}],
    "v":[{"symbol":"c","prior":0.5},{"symbol":"d","prior":0.5}],"map":{"a|c":"0","a|d":"1","b|c":"2","b|d":"0"},"dimB":2,"dimC":2})");
  const std::string si = write("si.json", serialize_model(labelled(raw, {"0|p", "0|q", "1|p", "1|q"}, {0.25, 0.25, 0.25, 0.25})));
  const std::string si_pre = write("si_pre.json", R"({"kind":"precoder","u":[{"symbol":"a","prior":0.3},{"symbol":"b","prior":0.7}],
    "s":[{"symbol":"p","prior":0.5},{"symbol":"q","prior":0.5}],"map":{"a|p":"0","a|q":"1","b|p":"1","b|q":"1"}})");

  const std::vector<std::vector<std::string>> commands{
      {"simulate", "cq", "--model", cq, "--messages", "3"},
      {"simulate", "cqsw", "--model", cq, "--messages", "2"},
      {"simulate", "mac", "--model", mac, "--ma", "2", "--mb", "3"},
      {"simulate", "broadcast", "--model", bc, "--precoder", bc_pre, "--mb", "2", "--mc", "2"},
      {"simulate", "state-info", "--model", si, "--precoder", si_pre, "--messages", "3"},
  };
  int identical = 0, total = 0;
  std::string first_failure;
  for (const auto& base : commands) {
    for (const char* seed : {"1", "987654321"}) {
      std::vector<std::string> outs;
      for (const char* threads : {"1", "4"}) {
        std::vector<std::string> args{"--threads", threads};
        args.insert(args.end(), base.begin(), base.end());
        args.insert(args.end(), {"--mode", "mc", "--seed", seed, "--trials", "2000"});
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        outs.push_back(std::to_string(code) + "\n" + out.str());
      }
      ++total;
      if (outs[0] == outs[1] && outs[0].rfind("0\n", 0) == 0) {
        ++identical;
      } else if (first_failure.empty()) {
        first_failure = base[1];
      }
    }
  }
  fs::remove_all(dir);
  std::string detail = fmt("%.0f/%.0f simulate invocations bit-identical across --threads 1 and 4", identical, total);
  if (!first_failure.empty()) detail += " (first mismatch: " + first_failure + ")";
  return {identical == total, detail};
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CQChannel> channels = channel_set();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"fact battery", fact_battery},
      {"Helstrom optimality", helstrom_optimality},
      {"Hayashi-Nagaoka inequality", hn_inequality},
      {"parallel-sum trace chain", trace_chain},
      {"c-q random coding certified", [&] { return theorem_cq(channels); }},
      {"packing certified", theorem_packing},
      {"CQSW/MAC/broadcast/state-info certified", protocol_certifications},
      {"relaxation chain and additivity", [&] { return relaxation_chain(channels); }},
      {"rate ordering", [&] { return rate_ordering(channels); }},
      {"hypothesis testing", hypothesis_testing},
      {"divergence reference values", divergence_values},
      {"Monte Carlo determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
