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

#ifndef WFM_TESTS_SUPPORT_HPP_
#define WFM_TESTS_SUPPORT_HPP_

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "wfm/errors.hpp"
#include "wfm/channel.hpp"
#include "wfm/protocol.hpp"
#include "wfm/table.hpp"

extern char** environ;

namespace wfm::testing {

struct PairResult {
  WfmOutput a;
  WfmOutput b;
  std::vector<Frame> frames_a_to_b;
  std::vector<Frame> frames_b_to_a;
};

struct PairSeeds {
  uint64_t a = 1;
  uint64_t b = 2;
  Bytes raw_a;  // used instead of a when non-empty
  Bytes raw_b;
  Rng rng_a() const { return raw_a.empty() ? Rng::from_seed(a) : Rng::from_seed(raw_a); }
  Rng rng_b() const { return raw_b.empty() ? Rng::from_seed(b) : Rng::from_seed(raw_b); }
};

// Runs both parties over an in-memory channel pair on two threads.
inline PairResult run_pair(const IdTable& ta, const IdTable& tb, const SessionConfig& cfg_a,
                           const SessionConfig& cfg_b, const PairSeeds& seeds = {}, bool capture = false) {
  auto [ca, cb] = channel_pair();
  PairResult res;
  if (capture) {
    ca->set_observer([&](bool outgoing, const Frame& f) {
      if (outgoing) res.frames_a_to_b.push_back(f);
    });
    cb->set_observer([&](bool outgoing, const Frame& f) {
      if (outgoing) res.frames_b_to_a.push_back(f);
    });
  }
  std::exception_ptr err_b;
  std::thread tb_thread([&] {
    try {
      Rng rng = seeds.rng_b();
      res.b = run_party_b(tb, cfg_b, *cb, rng);
    } catch (...) {
      err_b = std::current_exception();
      cb->close();
    }
  });
  std::exception_ptr err_a;
  try {
    Rng rng = seeds.rng_a();
    res.a = run_party_a(ta, cfg_a, *ca, rng);
  } catch (...) {
    err_a = std::current_exception();
    ca->close();
  }
  tb_thread.join();
  if (err_a) std::rethrow_exception(err_a);
  if (err_b) std::rethrow_exception(err_b);
  return res;
}

inline PairResult run_pair(const IdTable& ta, const IdTable& tb, const SessionConfig& cfg,
                           const PairSeeds& seeds = {}, bool capture = false) {
  return run_pair(ta, tb, cfg, cfg, seeds, capture);
}

inline SessionConfig fast_config(size_t m, Variant v = Variant::kSum) {
  SessionConfig cfg;
  cfg.variant = v;
  cfg.plan = plan_disabled(m);
  cfg.exec = Exec::kSerial;
  return cfg;
}

struct RandomSpec {
  size_t rows_a = 100;
  size_t rows_b = 100;
  size_t m = 2;
  double overlap = 0.3;        // fraction of A rows that also exist in B
  double missing = 0.1;        // per cell
  double cross_dup = 0.1;      // probability a column of a shared row differs
  double split = 0.1;          // shared person spread over two A rows (type-X)
  size_t payload_cols_a = 0;
  size_t payload_cols_b = 1;
};

struct RandomPair {
  IdTable a;
  IdTable b;
};

// Tables built from "people": shared people appear in both tables with
// per-column ids that sometimes differ or are missing, so matches happen
// on different columns. Ids are unique per column by construction.
inline RandomPair random_pair(const RandomSpec& s, Rng& rng) {
  std::vector<std::string> id_names, pay_a, pay_b;
  for (size_t c = 0; c < s.m; ++c) id_names.push_back("id" + std::to_string(c + 1));
  for (size_t c = 0; c < s.payload_cols_a; ++c) pay_a.push_back("pa" + std::to_string(c + 1));
  for (size_t c = 0; c < s.payload_cols_b; ++c) pay_b.push_back("pb" + std::to_string(c + 1));
  RandomPair out{make_table(id_names, pay_a), make_table(id_names, pay_b)};

  size_t counter = 0;
  auto fresh = [&](size_t c) {
    return "c" + std::to_string(c + 1) + "-" + std::to_string(counter++) + "-" +
           std::to_string(rng.next_u64() % 100000);
  };
  auto payloads = [&](size_t n) {
    std::vector<uint64_t> v;
    for (size_t i = 0; i < n; ++i) v.push_back(rng.next_u64() & 0xffffffffull);
    return v;
  };
  const size_t shared = static_cast<size_t>(std::floor(s.overlap * std::min(s.rows_a, s.rows_b)));
  std::vector<std::vector<Cell>> rows_a, rows_b;
  for (size_t p = 0; p < shared; ++p) {
    std::vector<Cell> ra(s.m), rb(s.m);
    for (size_t c = 0; c < s.m; ++c) {
      std::string id = fresh(c);
      ra[c] = id;
      rb[c] = rng.uniform01() < s.cross_dup ? Cell(fresh(c)) : Cell(id);
      if (rng.uniform01() < s.missing) ra[c] = std::nullopt;
      if (rng.uniform01() < s.missing) rb[c] = std::nullopt;
    }
    if (s.m > 1 && rng.uniform01() < s.split) {
      size_t c = rng.uniform_below(s.m);
      std::vector<Cell> other(s.m);
      other[c] = ra[c];
      ra[c] = std::nullopt;
      rows_a.push_back(other);
    }
    rows_a.push_back(ra);
    rows_b.push_back(rb);
  }
  auto filler = [&](std::vector<std::vector<Cell>>& rows, size_t n) {
    while (rows.size() < n) {
      std::vector<Cell> r(s.m);
      for (size_t c = 0; c < s.m; ++c) {
        if (rng.uniform01() >= s.missing) r[c] = fresh(c);
      }
      rows.push_back(r);
    }
  };
  if (rows_a.size() > s.rows_a) rows_a.resize(s.rows_a);
  filler(rows_a, s.rows_a);
  filler(rows_b, s.rows_b);
  std::shuffle(rows_a.begin(), rows_a.end(), rng);
  std::shuffle(rows_b.begin(), rows_b.end(), rng);
  for (auto& r : rows_a) out.a.add_row(r, payloads(s.payload_cols_a));
  for (auto& r : rows_b) out.b.add_row(r, payloads(s.payload_cols_b));
  out.a.validate();
  out.b.validate();
  return out;
}

// Naive waterfall written independently of oracle_wfm: for every column,
// scan all unmatched pairs.
struct NaiveResult {
  std::vector<size_t> sizes;
  std::vector<std::set<size_t>> ja, jb;
  std::vector<uint64_t> sums_b, sums_a;
};

inline NaiveResult naive_waterfall(const IdTable& a, const IdTable& b) {
  NaiveResult r;
  std::set<size_t> used_a, used_b;
  for (size_t c = 0; c < a.num_id_columns(); ++c) {
    std::set<size_t> ja, jb;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (used_a.count(i) || !a.ids[c][i]) continue;
      for (size_t j = 0; j < b.rows(); ++j) {
        if (used_b.count(j) || jb.count(j) || !b.ids[c][j]) continue;
        if (*a.ids[c][i] == *b.ids[c][j]) {
          ja.insert(i);
          jb.insert(j);
          break;
        }
      }
    }
    used_a.insert(ja.begin(), ja.end());
    used_b.insert(jb.begin(), jb.end());
    r.sizes.push_back(ja.size());
    r.ja.push_back(ja);
    r.jb.push_back(jb);
  }
  for (const auto& col : b.payloads) {
    uint64_t s = 0;
    for (size_t j : used_b) s += col[j];
    r.sums_b.push_back(s);
  }
  for (const auto& col : a.payloads) {
    uint64_t s = 0;
    for (size_t i : used_a) s += col[i];
    r.sums_a.push_back(s);
  }
  return r;
}

// Maps padded-row indices back to input rows, dropping dummies.
inline std::vector<size_t> real_rows(const std::vector<size_t>& padded, const PaddedTable& t) {
  std::vector<size_t> out;
  for (size_t j : padded) {
    if (t.origin[j] != kDummyRow) out.push_back(t.origin[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0;
  for (size_t i = 0; i < std::max(p.size(), q.size()); ++i) {
    double a = i < p.size() ? p[i] : 0, b = i < q.size() ? q[i] : 0;
    tv += std::abs(a - b);
  }
  return tv / 2;
}

inline std::vector<double> histogram(const std::vector<long long>& samples, size_t bins) {
  std::vector<double> h(bins, 0.0);
  double extra = 0;
  for (long long s : samples) {
    if (s >= 0 && static_cast<size_t>(s) < bins) {
      h[static_cast<size_t>(s)] += 1;
    } else {
      extra += 1;
    }
  }
  for (auto& x : h) x /= samples.size();
  if (extra > 0) h.push_back(extra / samples.size());
  return h;
}

// Spawns a process; returns its pid.
inline pid_t spawn(const std::vector<std::string>& argv, const std::string& stdout_path = "") {
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  posix_spawn_file_actions_t fa;
  posix_spawn_file_actions_init(&fa);
  if (!stdout_path.empty()) {
    posix_spawn_file_actions_addopen(&fa, 1, stdout_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  }
  pid_t pid = 0;
  int rc = posix_spawn(&pid, args[0], &fa, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&fa);
  if (rc != 0) throw Error("posix_spawn failed for " + argv[0]);
  return pid;
}

inline int wait_exit(pid_t pid) {
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string temp_path(const std::string& name) {
  return "/tmp/wfm-test-" + std::to_string(getpid()) + "-" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Waits for a file to appear and hold a full line.
inline std::string wait_for_file(const std::string& path, int timeout_ms = 20000) {
  for (int waited = 0; waited < timeout_ms; waited += 20) {
    std::string s = read_file(path);
    if (!s.empty() && s.back() == '\n') return s;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  throw Error("timed out waiting for " + path);
}

struct CliPair {
  int exit_a = -1;
  int exit_b = -1;
  std::string report_a;  // paths
  std::string report_b;
  std::string stdout_a;
  std::string stdout_b;
};

// Runs party b listening on an ephemeral port and party a connecting to it,
// as two processes of the CLI binary.
inline CliPair run_cli_pair(const std::string& cli, const std::vector<std::string>& args_a,
                            const std::vector<std::string>& args_b, const std::string& tag) {
  CliPair r;
  const std::string port_file = temp_path(tag + ".port");
  r.report_a = temp_path(tag + ".a.json");
  r.report_b = temp_path(tag + ".b.json");
  const std::string out_a = temp_path(tag + ".a.out"), out_b = temp_path(tag + ".b.out");
  std::remove(port_file.c_str());
  std::vector<std::string> vb{cli, "--role", "b", "--listen", "127.0.0.1:0", "--port-file", port_file,
                              "--report", r.report_b};
  vb.insert(vb.end(), args_b.begin(), args_b.end());
  pid_t pb = spawn(vb, out_b);
  std::string port;
  try {
    port = wait_for_file(port_file);
  } catch (...) {
    kill(pb, SIGKILL);
    wait_exit(pb);
    throw;
  }
  port.pop_back();
  std::vector<std::string> va{cli, "--role", "a", "--connect", "127.0.0.1:" + port, "--report", r.report_a};
  va.insert(va.end(), args_a.begin(), args_a.end());
  pid_t pa = spawn(va, out_a);
  r.exit_a = wait_exit(pa);
  r.exit_b = wait_exit(pb);
  r.stdout_a = read_file(out_a);
  r.stdout_b = read_file(out_b);
  std::remove(port_file.c_str());
  std::remove(out_a.c_str());
  std::remove(out_b.c_str());
  return r;
}

}  // namespace wfm::testing

#endif  // WFM_TESTS_SUPPORT_HPP_
