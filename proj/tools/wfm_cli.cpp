/*
 * Copyright 2026 The wfm Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wfm/accountant.hpp"
#include "wfm/channel.hpp"
#include "wfm/csv.hpp"
#include "wfm/errors.hpp"
#include "wfm/leakage.hpp"
#include "wfm/protocol.hpp"
#include "wfm/report.hpp"

using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw wfm::ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

struct PartyArgs {
  std::string role, listen, connect, ids, id_columns, payload, variant = "sum";
  double epsilon = 2.0, delta = 1e-5;
  size_t executions = 1;
  bool no_dp = false;
  long long tau = -1;
  std::string tag_width = "full";
  std::string seed, private_seed, report, port_file;
  unsigned ahe_bits = 512;
  bool prod = false;
  bool skip_last_update = false;
  bool serial = false;
  size_t nx = wfm::kDefaultFftBins;
};

int run_party(const PartyArgs& a) {
  using namespace wfm;
  if (a.role != "a" && a.role != "b") throw ConfigError("--role must be a or b");
  if (a.listen.empty() == a.connect.empty()) throw ConfigError("give exactly one of --listen or --connect");
  if (a.ids.empty() || a.id_columns.empty()) throw ConfigError("--ids and --id-columns are required");

  const auto id_cols = split_list(a.id_columns);
  const auto pay_cols = split_list(a.payload);
  IdTable table = ingest_csv(a.ids, id_cols, pay_cols);

  SessionConfig cfg;
  cfg.variant = parse_variant(a.variant);
  cfg.tag_width = parse_tag_width(a.tag_width);
  cfg.skip_last_update = a.skip_last_update;
  cfg.ahe_bits = a.prod ? 2048 : a.ahe_bits;
  cfg.exec = a.serial ? Exec::kSerial : Exec::kParallel;
  const size_t m = id_cols.size();
  Bytes seed = a.seed.empty() ? Bytes{} : from_hex(a.seed);
  if (a.no_dp) {
    cfg.plan = plan_disabled(m);
  } else if (a.tau >= 0) {
    cfg.plan = plan_with_tau(static_cast<size_t>(a.tau), m, seed);
    cfg.plan.epsilon = a.epsilon;
    cfg.plan.delta = a.delta;
    cfg.plan.executions = a.executions;
  } else {
    if (seed.empty()) throw ConfigError("--seed is required unless --no-dp is given");
    cfg.plan = plan_dp(a.epsilon, a.delta, a.executions, m, seed, a.nx);
  }

  Bytes private_seed = a.private_seed.empty() ? Bytes{} : from_hex(a.private_seed);
  Rng rng = private_seed.empty() ? Rng::system() : Rng::from_seed(private_seed);

  std::unique_ptr<Channel> ch;
  if (!a.listen.empty()) {
    TcpListener listener(a.listen);
    if (!a.port_file.empty()) {
      std::ofstream pf(a.port_file + ".tmp");
      pf << listener.port() << "\n";
      pf.close();
      std::rename((a.port_file + ".tmp").c_str(), a.port_file.c_str());
    }
    ch = listener.accept();
  } else {
    ch = tcp_connect(a.connect);
  }

  WfmOutput out = a.role == "a" ? run_party_a(table, cfg, *ch, rng) : run_party_b(table, cfg, *ch, rng);
  ch->close();

  json report = make_report(out, cfg, table.rows(), private_seed);
  if (!a.report.empty()) write_json(a.report, report);

  std::cout << "role " << a.role << " tau " << cfg.plan.tau << " sizes";
  for (size_t s : out.sizes) std::cout << " " << s;
  if (!out.sums.empty()) {
    std::cout << " sums";
    for (const auto& s : out.sums) std::cout << " " << s.get_str();
  }
  std::cout << "\n";
  return 0;
}

int run_accountant(double epsilon, double delta, size_t k, size_t nx) {
  using namespace wfm;
  size_t tau = find_min_tau(epsilon, delta, k, nx);
  json curve = json::array();
  size_t step = std::max<size_t>(1, tau / 40);
  for (size_t t = 1; t <= tau + step; t += step) {
    curve.push_back({{"tau", t}, {"delta", static_cast<double>(estimate_delta_fft(t, k, epsilon, nx).delta)}});
  }
  json j = {{"tau", tau},
            {"epsilon", epsilon},
            {"delta", delta},
            {"executions", k},
            {"nx", nx},
            {"delta_at_tau", static_cast<double>(estimate_delta_fft(tau, k, epsilon, nx).delta)},
            {"curve", curve}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_leakage(const std::string& mode, double epsilon, double delta, size_t executions,
                size_t trials, size_t candidates, uint64_t seed, const std::string& out) {
  using namespace wfm;
  LeakageParams p;
  p.mode = parse_oracle_mode(mode);
  p.executions = executions;
  p.trials = trials;
  p.candidates = candidates;
  p.seed = seed;
  if (p.mode == OracleMode::kDpNoised) p.tau = find_min_tau(epsilon, delta, executions);
  LeakageCurve c = leakage_curve(p);
  json series = json::array();
  for (size_t e = 0; e < c.fraction.size(); ++e) {
    series.push_back({{"executions", e + 1}, {"fraction", c.fraction[e]}, {"stddev", c.stddev[e]}});
  }
  json j = {{"mode", mode},          {"epsilon", epsilon}, {"delta", delta},
            {"tau", p.tau},          {"trials", trials},   {"candidates", candidates},
            {"member_fraction", p.member_fraction}, {"series", series}};
  write_json(out, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waterfall private matching with DP-padded intersection sizes"};
  app.require_subcommand(0, 1);

  PartyArgs pa;
  app.add_option("--role", pa.role, "Party role")->check(CLI::IsMember({"a", "b"}));
  app.add_option("--listen", pa.listen, "host:port to accept on");
  app.add_option("--connect", pa.connect, "host:port to connect to");
  app.add_option("--ids", pa.ids, "Input CSV");
  app.add_option("--id-columns", pa.id_columns, "Id columns in priority order, comma separated");
  app.add_option("--payload", pa.payload, "Payload column(s), comma separated");
  app.add_option("--variant", pa.variant, "sum | share | both")->check(CLI::IsMember({"sum", "share", "both"}));
  app.add_option("--epsilon", pa.epsilon, "DP epsilon over all executions");
  app.add_option("--delta", pa.delta, "DP delta over all executions");
  app.add_option("--executions", pa.executions, "Maximum number of executions k");
  app.add_flag("--no-dp", pa.no_dp, "Disable padding (tau = 0 test mode)");
  app.add_option("--tau", pa.tau, "Explicit tau instead of the accountant's");
  app.add_option("--tag-width", pa.tag_width, "full | 96")->check(CLI::IsMember({"full", "96"}));
  app.add_option("--seed", pa.seed, "Shared dummy seed (hex), same on both sides");
  app.add_option("--private-seed", pa.private_seed, "Seed for this party's randomness (hex); system RNG if absent");
  app.add_option("--report", pa.report, "Write the run report JSON here");
  app.add_option("--ahe-bits", pa.ahe_bits, "Paillier modulus size")->check(CLI::IsMember({512, 2048}));
  app.add_flag("--prod", pa.prod, "2048-bit Paillier keys");
  app.add_flag("--skip-last-update", pa.skip_last_update, "Keep the last column in its first key epoch");
  app.add_flag("--serial", pa.serial, "Use the serial kernels");
  app.add_option("--port-file", pa.port_file, "With --listen, write the bound port here");
  app.add_option("--nx", pa.nx, "FFT bins for the accountant");

  auto* acc = app.add_subcommand("accountant", "Minimal tau for a DP budget");
  double acc_eps = 2.0, acc_delta = 1e-5;
  size_t acc_k = 1, acc_nx = wfm::kDefaultFftBins;
  acc->add_option("--epsilon", acc_eps)->required();
  acc->add_option("--delta", acc_delta)->required();
  acc->add_option("--executions", acc_k)->required();
  acc->add_option("--nx", acc_nx);

  auto* leak = app.add_subcommand("leakage", "Membership leakage curve of the bisection attacker");
  std::string lk_mode = "exact", lk_out = "-";
  double lk_eps = 2.0, lk_delta = 1e-5;
  size_t lk_exec = 20, lk_trials = 100, lk_cands = 10000;
  uint64_t lk_seed = 1;
  leak->add_option("--mode", lk_mode)->check(CLI::IsMember({"exact", "dp"}));
  leak->add_option("--epsilon", lk_eps);
  leak->add_option("--delta", lk_delta);
  leak->add_option("--executions", lk_exec);
  leak->add_option("--trials", lk_trials);
  leak->add_option("--candidates", lk_cands);
  leak->add_option("--seed", lk_seed);
  leak->add_option("--out", lk_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (acc->parsed()) return run_accountant(acc_eps, acc_delta, acc_k, acc_nx);
    if (leak->parsed()) return run_leakage(lk_mode, lk_eps, lk_delta, lk_exec, lk_trials, lk_cands, lk_seed, lk_out);
    if (pa.role.empty()) {
      std::cerr << app.help();
      return 2;
    }
    return run_party(pa);
  } catch (const wfm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
