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

#include "wfm/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_set>

#include "wfm/ahe.hpp"
#include "wfm/durprf.hpp"
#include "wfm/errors.hpp"

namespace wfm {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kSum: return "sum";
    case Variant::kShare: return "share";
    case Variant::kBoth: return "both";
  }
  return "unknown";
}

Variant parse_variant(std::string_view s) {
  if (s == "sum") return Variant::kSum;
  if (s == "share") return Variant::kShare;
  if (s == "both") return Variant::kBoth;
  throw ConfigError("variant must be sum, share or both");
}

std::string column_sid(size_t b) { return "col:" + std::to_string(b); }
std::string update_sid(size_t b) { return "col:" + std::to_string(b) + ":upd"; }

DpPlan plan_dp(double epsilon, double delta, size_t k, size_t m, Bytes seed, size_t bins) {
  check_budget(epsilon, delta);
  if (k == 0) throw ConfigError("executions must be >= 1");
  if (m == 0) throw ConfigError("need at least one id column");
  if (seed.empty()) throw ConfigError("DP padding needs a shared seed");
  DpPlan p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.executions = k;
  p.m = m;
  p.tau = find_min_tau(epsilon, delta, k, bins);
  p.enabled = true;
  p.seed = std::move(seed);
  return p;
}

DpPlan plan_disabled(size_t m) {
  DpPlan p;
  p.m = m;
  return p;
}

DpPlan plan_with_tau(size_t tau, size_t m, Bytes seed) {
  if (tau > 0 && seed.empty()) throw ConfigError("DP padding needs a shared seed");
  DpPlan p;
  p.m = m;
  p.tau = tau;
  p.enabled = tau > 0;
  p.tau_override = true;
  p.seed = std::move(seed);
  return p;
}

PaddedTable dp_enhance(const IdTable& table, const DpPlan& plan, Party party, Rng& rng) {
  if (plan.m != table.num_id_columns()) throw ConfigError("plan built for a different column count");
  if (plan.tau == 0) return unpadded(table);
  DummyUniverse u = DummyUniverse::generate(plan.seed, plan.m, plan.tau);
  PaddedTable t = pad_multi(table, u, party, rng);
  // Dummies sit at the end otherwise, and peer-visible match positions
  // would tell them apart from real rows.
  shuffle_rows(t, rng);
  return t;
}

namespace {

constexpr std::string_view kSetupSid = "setup";
constexpr std::string_view kPayloadSid = "payload";
constexpr std::string_view kFinalSid = "final";
constexpr std::string_view kConfirmSid = "confirm";

struct Matched {
  std::vector<size_t> rows;   // peer rows, in discovery order
  std::vector<TagBytes> tags;  // the tag each row matched on
};

class Session {
 public:
  Session(Party party, const IdTable& table, const SessionConfig& cfg, Channel& ch, Rng& rng)
      : party_(party),
        cfg_(cfg),
        ch_(ch),
        rng_(rng),
        group_(cfg.group ? cfg.group : make_p256()),
        prf_(group_, rng_, cfg.exec) {
    m_ = table.num_id_columns();
    out_.party = party;
    run_stage("setup", [&] { prepare(table); });
  }

  WfmOutput run() {
    if (party_ == Party::kA) {
      run_stage("setup", [&] { setup_a(); });
      run_stage("prf", [&] { prf_a(); });
      run_stage("match", [&] { first_column(); });
      run_stage("waterfall", [&] { waterfall(); });
      run_stage("final", [&] { final_a(); });
      run_stage("confirm", [&] { confirm_a(); });
    } else {
      run_stage("setup", [&] { setup_b(); });
      run_stage("prf", [&] { prf_b(); });
      run_stage("match", [&] { first_column(); });
      run_stage("waterfall", [&] { waterfall(); });
      run_stage("final", [&] { final_b(); });
      run_stage("confirm", [&] { confirm_b(); });
    }
    out_.stats.total = ch_.stats();
    out_.stats.elements_sent = elements_sent_;
    out_.padded = std::move(padded_);
    return std::move(out_);
  }

 private:
  bool is_a() const { return party_ == Party::kA; }
  bool both() const { return cfg_.variant == Variant::kBoth; }
  bool skip_at(size_t b) const { return cfg_.skip_last_update && b == m_; }

  template <typename Fn>
  void run_stage(const std::string& name, Fn&& fn) {
    const ChannelStats before = ch_.stats();
    const auto t0 = std::chrono::steady_clock::now();
    const std::string prefix = "stage " + name + ": ";
    try {
      fn();
    } catch (const PeerAbort& e) {
      throw PeerAbort(prefix + e.what());
    } catch (const ChannelError& e) {
      throw ChannelError(prefix + e.what());
    } catch (const Error& e) {
      ch_.send_abort(prefix + e.what());
      throw ProtocolError(prefix + e.what());
    }
    const ChannelStats after = ch_.stats();
    StageStats s;
    s.name = name;
    s.traffic.bytes_sent = after.bytes_sent - before.bytes_sent;
    s.traffic.bytes_received = after.bytes_received - before.bytes_received;
    s.traffic.frames_sent = after.frames_sent - before.frames_sent;
    s.traffic.frames_received = after.frames_received - before.frames_received;
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // setup runs in two pieces (local preparation, then exchange)
    if (!out_.stats.stages.empty() && out_.stats.stages.back().name == name) {
      auto& last = out_.stats.stages.back();
      last.traffic.bytes_sent += s.traffic.bytes_sent;
      last.traffic.bytes_received += s.traffic.bytes_received;
      last.traffic.frames_sent += s.traffic.frames_sent;
      last.traffic.frames_received += s.traffic.frames_received;
      last.seconds += s.seconds;
    } else {
      out_.stats.stages.push_back(std::move(s));
    }
  }

  // ---- local preparation ----

  void prepare(const IdTable& table) {
    table.validate();
    if (cfg_.plan.m != m_) throw ConfigError("plan built for a different column count");
    const bool need_payload = !is_a() || both();
    if (need_payload && table.num_payload_columns() == 0) {
      throw ConfigError("party " + to_string(party_) + " needs a payload column for this variant");
    }
    if (cfg_.ahe_bits != 512 && cfg_.ahe_bits != 2048) throw ConfigError("AHE key size must be 512 or 2048");
    padded_ = dp_enhance(table, cfg_.plan, party_, rng_);
    n_self_ = padded_.rows();

    ids_.resize(m_);
    for (size_t c = 0; c < m_; ++c) {
      ids_[c].reserve(n_self_);
      for (size_t r = 0; r < n_self_; ++r) {
        const Cell& cell = padded_.table.ids[c][r];
        ids_[c].push_back(cell ? *cell
                               : std::string(kReservedPrefix) + "na:" + to_string(party_) + ":" +
                                     std::to_string(r));
      }
    }
    for (size_t b = 1; b <= m_; ++b) {
      prf_.init(column_sid(b));
      if (b >= 2) prf_.init(update_sid(b));
    }
    out_.sizes.assign(m_, 0);
    out_.peer_matched.assign(m_, std::nullopt);
  }

  // ---- setup ----

  // Lets the peers notice different --seed values. Labelled so it is not a
  // plain hash of the seed; empty when padding is off.
  Bytes seed_check() const {
    if (cfg_.plan.tau == 0) return {};
    Bytes msg;
    put_str16(msg, "wfm dummy seed check");
    put_bytes(msg, cfg_.plan.seed);
    Bytes d = sha256(msg);
    return Bytes(d.begin(), d.begin() + 8);
  }

  Bytes config_blob(size_t rows, size_t payload_cols) const {
    Bytes p;
    p.push_back(static_cast<uint8_t>(cfg_.variant));
    p.push_back(static_cast<uint8_t>(cfg_.tag_width));
    p.push_back(cfg_.skip_last_update ? 1 : 0);
    put_str16(p, group_->params().name);
    put_u16(p, static_cast<uint16_t>(m_));
    put_u32(p, static_cast<uint32_t>(cfg_.plan.tau));
    put_u16(p, static_cast<uint16_t>(cfg_.ahe_bits));
    put_blob32(p, seed_check());
    put_u32(p, static_cast<uint32_t>(rows));
    put_u16(p, static_cast<uint16_t>(payload_cols));
    return p;
  }

  // Parses the peer's config and returns (rows, payload columns).
  std::pair<size_t, size_t> check_config(ByteReader& r) const {
    auto fail = [](const std::string& what) { throw ProtocolError("config mismatch: " + what); };
    if (r.u8() != static_cast<uint8_t>(cfg_.variant)) fail("variant");
    if (r.u8() != static_cast<uint8_t>(cfg_.tag_width)) fail("tag width");
    if (r.u8() != (cfg_.skip_last_update ? 1 : 0)) fail("last-column update mode");
    if (r.str16() != group_->params().name) fail("group");
    if (r.u16() != m_) fail("id column count");
    if (r.u32() != cfg_.plan.tau) fail("tau");
    if (r.u16() != cfg_.ahe_bits) fail("AHE key size");
    ByteSpan check = r.blob32();
    if (!std::ranges::equal(check, seed_check())) fail("shared dummy seed");
    size_t rows = r.u32();
    size_t cols = r.u16();
    return {rows, cols};
  }

  void send_setup() {
    keys_ = ahe::gen(cfg_.ahe_bits, rng_);
    Bytes p = config_blob(n_self_, padded_.table.num_payload_columns());
    ahe::put_public_key(p, keys_.pk);
    ch_.send(Frame{MessageType::kSetupPk, std::string(kSetupSid), std::move(p)});

    const size_t cols = padded_.table.num_payload_columns();
    Bytes q;
    put_u16(q, static_cast<uint16_t>(cols));
    put_u32(q, static_cast<uint32_t>(n_self_));
    for (size_t c = 0; c < cols; ++c) {
      for (const auto& ct : ahe::enc_all(keys_.pk, padded_.table.payloads[c], rng_, cfg_.exec)) {
        ahe::put_ciphertext(q, ct);
      }
    }
    ch_.send(Frame{MessageType::kPayloadCts, std::string(kPayloadSid), std::move(q)});
  }

  void recv_setup() {
    Frame f = ch_.recv_expect(MessageType::kSetupPk, kSetupSid);
    ByteReader r(f.payload);
    auto [rows, cols] = check_config(r);
    if (cols == 0) throw ProtocolError("peer sent no payload columns");
    if (rows > (size_t{1} << 28)) throw ProtocolError("peer row count out of range");
    peer_pk_ = ahe::read_public_key(r);
    r.expect_done();
    n_peer_ = rows;

    Frame g = ch_.recv_expect(MessageType::kPayloadCts, kPayloadSid);
    ByteReader q(g.payload);
    if (q.u16() != cols) throw ProtocolError("payload column count differs from setup");
    if (q.u32() != rows) throw ProtocolError("payload row count differs from setup");
    peer_cts_.assign(cols, {});
    for (size_t c = 0; c < cols; ++c) {
      peer_cts_[c].reserve(rows);
      for (size_t i = 0; i < rows; ++i) peer_cts_[c].push_back(ahe::read_ciphertext(q, peer_pk_));
    }
    q.expect_done();
  }

  void setup_a() {
    recv_setup();
    if (both()) send_setup();
  }

  void setup_b() {
    send_setup();
    if (both()) recv_setup();
  }

  // ---- stage 2: PRF exchange ----

  void prf_a() {
    peer_tags_.resize(m_);
    for (size_t b = 1; b <= m_; ++b) {
      peer_tags_[b - 1] = prf_.eval_recv(column_sid(b), ch_, cfg_.tag_width);
      if (peer_tags_[b - 1].size() != n_peer_) throw ProtocolError("PRF batch size differs from setup");
      prf_.eval_send(column_sid(b), ids_[b - 1], ch_);
      elements_sent_ += n_self_;
    }
  }

  void prf_b() {
    peer_tags_.resize(m_);
    for (size_t b = 1; b <= m_; ++b) {
      prf_.eval_send(column_sid(b), ids_[b - 1], ch_);
      elements_sent_ += n_self_;
      peer_tags_[b - 1] = prf_.eval_recv(column_sid(b), ch_, cfg_.tag_width);
      if (b == 1 && !both()) n_peer_ = peer_tags_[0].size();
      if (peer_tags_[b - 1].size() != n_peer_) throw ProtocolError("PRF batch sizes differ across columns");
    }
    peer_alive_.assign(n_peer_, true);
  }

  // ---- shuffled tag exchange ----

  void send_shuffled(const std::string& sid, std::vector<TagBytes> tags) {
    std::shuffle(tags.begin(), tags.end(), rng_);
    const size_t w = group_->tag_size(cfg_.tag_width);
    Bytes p;
    p.push_back(static_cast<uint8_t>(cfg_.tag_width));
    put_u32(p, static_cast<uint32_t>(tags.size()));
    for (const auto& t : tags) put_bytes(p, as_bytes(t.bytes));
    if (p.size() != 5 + tags.size() * w) throw CryptoError("tag width inconsistent");
    ch_.send(Frame{MessageType::kTagsShuffled, sid, std::move(p)});
    elements_sent_ += tags.size();
  }

  std::unordered_set<TagBytes> recv_shuffled(const std::string& sid, size_t expected) {
    Frame f = ch_.recv_expect(MessageType::kTagsShuffled, sid);
    ByteReader r(f.payload);
    if (r.u8() != static_cast<uint8_t>(cfg_.tag_width)) throw ProtocolError("shuffled tags have the wrong width");
    const size_t count = r.u32();
    if (count != expected) throw ProtocolError("shuffled tag count mismatch");
    const size_t w = group_->tag_size(cfg_.tag_width);
    std::unordered_set<TagBytes> set;
    set.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      ByteSpan s = r.take(w);
      set.insert(TagBytes{std::string(reinterpret_cast<const char*>(s.data()), w)});
    }
    r.expect_done();
    return set;
  }

  // Marks the peer rows sigma[i] whose tag is in the set as matched.
  void record(size_t b, const std::vector<TagBytes>& tags, std::span<const size_t> sigma,
              const std::unordered_set<TagBytes>& set) {
    Matched mt;
    for (size_t i = 0; i < tags.size(); ++i) {
      if (!set.contains(tags[i])) continue;
      if (!peer_alive_[sigma[i]]) throw ProtocolError("row matched twice");
      mt.rows.push_back(sigma[i]);
      mt.tags.push_back(tags[i]);
    }
    for (size_t j : mt.rows) peer_alive_[j] = false;
    std::vector<size_t> sorted = mt.rows;
    std::sort(sorted.begin(), sorted.end());
    out_.sizes[b - 1] = sorted.size();
    out_.peer_matched[b - 1] = std::move(sorted);
    matched_.push_back(std::move(mt));
    matched_columns_.push_back(b);
  }

  // ---- stage 3: first column ----

  void first_column() {
    if (peer_alive_.empty()) peer_alive_.assign(n_peer_, true);
    std::vector<size_t> all(n_peer_);
    std::iota(all.begin(), all.end(), size_t{0});
    const bool b_learns = m_ > 1 || both();
    const std::string sid = column_sid(1);
    if (is_a()) {
      auto set = recv_shuffled(sid, n_self_);
      record(1, peer_tags_[0].tags, all, set);
      if (b_learns) send_shuffled(sid, peer_tags_[0].tags);
    } else {
      send_shuffled(sid, peer_tags_[0].tags);
      if (b_learns) record(1, peer_tags_[0].tags, all, recv_shuffled(sid, n_self_));
    }
  }

  // ---- stage 4: remaining columns ----

  TagSet restrict_peer(size_t b, std::vector<size_t>& sigma) const {
    const TagSet& full = peer_tags_[b - 1];
    TagSet r;
    r.sid = full.sid;
    r.width = full.width;
    for (size_t j = 0; j < n_peer_; ++j) {
      if (!peer_alive_[j]) continue;
      sigma.push_back(j);
      r.elements.push_back(full.elements[j]);
      r.tags.push_back(full.tags[j]);
    }
    return r;
  }

  void waterfall() {
    for (size_t b = 2; b <= m_; ++b) {
      std::vector<size_t> sigma;
      TagSet rtag = restrict_peer(b, sigma);
      const std::string sid = column_sid(b), usid = update_sid(b);
      const TagWidth w = cfg_.tag_width;

      if (skip_at(b)) {
        // Last column stays in its first-round epoch; tags go out shuffled
        // as in the first column.
        if (is_a()) {
          record(b, rtag.tags, sigma, recv_shuffled_any(sid));
          if (both()) send_shuffled(sid, rtag.tags);
        } else {
          send_shuffled(sid, rtag.tags);
          if (both()) record(b, rtag.tags, sigma, recv_shuffled_any(sid));
        }
        continue;
      }

      // Each side blind-updates the peer's surviving tags with the other
      // assisting. The assistant's output is its own surviving rows under
      // the new key in a random order, which is exactly the set the updater
      // needs to match against.
      TagSet updated, own;
      if (is_a()) {
        updated = prf_.update(sid, usid, rtag, ch_, w);
        elements_sent_ += rtag.size();
        own = prf_.assist(sid, usid, ch_, w);
        elements_sent_ += own.size();
      } else {
        own = prf_.assist(sid, usid, ch_, w);
        elements_sent_ += own.size();
        updated = prf_.update(sid, usid, rtag, ch_, w);
        elements_sent_ += rtag.size();
      }
      std::unordered_set<TagBytes> set(own.tags.begin(), own.tags.end());
      record(b, updated.tags, sigma, set);
    }
  }

  std::unordered_set<TagBytes> recv_shuffled_any(const std::string& sid) {
    Frame f = ch_.recv_expect(MessageType::kTagsShuffled, sid);
    ByteReader r(f.payload);
    if (r.u8() != static_cast<uint8_t>(cfg_.tag_width)) throw ProtocolError("shuffled tags have the wrong width");
    const size_t count = r.u32();
    const size_t w = group_->tag_size(cfg_.tag_width);
    if (r.remaining() != count * w) throw ProtocolError("shuffled tag batch size mismatch");
    std::unordered_set<TagBytes> set;
    for (size_t i = 0; i < count; ++i) {
      ByteSpan s = r.take(w);
      set.insert(TagBytes{std::string(reinterpret_cast<const char*>(s.data()), w)});
    }
    return set;
  }

  // ---- final stage ----

  // Matched peer rows with their tags, ordered by (column, tag).
  std::vector<size_t> matched_by_tag() const {
    std::vector<std::pair<std::pair<size_t, std::string>, size_t>> items;
    for (size_t k = 0; k < matched_.size(); ++k) {
      for (size_t i = 0; i < matched_[k].rows.size(); ++i) {
        items.push_back({{matched_columns_[k], matched_[k].tags[i].bytes}, matched_[k].rows[i]});
      }
    }
    std::sort(items.begin(), items.end());
    std::vector<size_t> rows;
    for (auto& it : items) rows.push_back(it.second);
    return rows;
  }

  std::vector<size_t> matched_union() const {
    std::vector<size_t> rows;
    for (const auto& mt : matched_) rows.insert(rows.end(), mt.rows.begin(), mt.rows.end());
    std::sort(rows.begin(), rows.end());
    return rows;
  }

  void send_shares(const std::vector<size_t>& order) {
    const size_t cols = peer_cts_.size();
    Bytes p;
    put_u16(p, static_cast<uint16_t>(cols));
    put_u32(p, static_cast<uint32_t>(order.size()));
    out_.mask_shares.assign(cols, {});
    out_.mask_modulus = peer_pk_.n;
    for (size_t c = 0; c < cols; ++c) {
      for (size_t j : order) {
        auto [masked, r] = ahe::mask_share(peer_pk_, peer_cts_[c][j], rng_);
        ahe::put_ciphertext(p, masked);
        mpz_class neg = (peer_pk_.n - r) % peer_pk_.n;
        out_.mask_shares[c].push_back(std::move(neg));
      }
    }
    ch_.send(Frame{MessageType::kShareCts, std::string(kFinalSid), std::move(p)});
  }

  void recv_shares() {
    Frame f = ch_.recv_expect(MessageType::kShareCts, kFinalSid);
    ByteReader r(f.payload);
    const size_t cols = r.u16();
    if (cols != padded_.table.num_payload_columns()) throw ProtocolError("share column count mismatch");
    const size_t count = r.u32();
    if (count > n_self_) throw ProtocolError("more shares than rows");
    out_.received_shares.assign(cols, {});
    out_.received_modulus = keys_.pk.n;
    for (size_t c = 0; c < cols; ++c) {
      std::vector<Ciphertext> cts;
      for (size_t i = 0; i < count; ++i) cts.push_back(ahe::read_ciphertext(r, keys_.pk));
      out_.received_shares[c] = ahe::dec_all(keys_, cts, cfg_.exec);
    }
    r.expect_done();
  }

  void final_a() {
    switch (cfg_.variant) {
      case Variant::kSum: {
        const auto rows = matched_union();
        Bytes p;
        put_u16(p, static_cast<uint16_t>(peer_cts_.size()));
        for (const auto& col : peer_cts_) {
          Ciphertext ct;
          if (rows.empty()) {
            ct = ahe::enc(peer_pk_, 0, rng_);
          } else {
            std::vector<Ciphertext> picked;
            picked.reserve(rows.size());
            for (size_t j : rows) picked.push_back(col[j]);
            ct = ahe::sum(peer_pk_, picked);
          }
          ahe::put_ciphertext(p, ahe::refresh(peer_pk_, ct, rng_));
        }
        ch_.send(Frame{MessageType::kSumCt, std::string(kFinalSid), std::move(p)});
        break;
      }
      case Variant::kShare: {
        auto order = matched_union();
        std::shuffle(order.begin(), order.end(), rng_);
        send_shares(order);
        break;
      }
      case Variant::kBoth:
        send_shares(matched_by_tag());
        recv_shares();
        break;
    }
  }

  void final_b() {
    switch (cfg_.variant) {
      case Variant::kSum: {
        Frame f = ch_.recv_expect(MessageType::kSumCt, kFinalSid);
        ByteReader r(f.payload);
        const size_t cols = r.u16();
        if (cols != padded_.table.num_payload_columns()) throw ProtocolError("sum column count mismatch");
        for (size_t c = 0; c < cols; ++c) out_.sums.push_back(ahe::dec(keys_, ahe::read_ciphertext(r, keys_.pk)));
        r.expect_done();
        break;
      }
      case Variant::kShare:
        recv_shares();
        break;
      case Variant::kBoth:
        recv_shares();
        send_shares(matched_by_tag());
        break;
    }
  }

  // ---- size confirmation ----

  Bytes sizes_blob() const {
    Bytes p;
    put_u16(p, static_cast<uint16_t>(m_));
    for (size_t s : out_.sizes) put_u32(p, static_cast<uint32_t>(s));
    return p;
  }

  std::vector<size_t> read_sizes(const Frame& f) const {
    ByteReader r(f.payload);
    if (r.u16() != m_) throw ProtocolError("size confirmation has the wrong column count");
    std::vector<size_t> s(m_);
    for (auto& v : s) v = r.u32();
    r.expect_done();
    return s;
  }

  void confirm_a() {
    ch_.send(Frame{MessageType::kSizeConfirm, std::string(kConfirmSid), sizes_blob()});
    auto echo = read_sizes(ch_.recv_expect(MessageType::kSizeConfirm, kConfirmSid));
    if (echo != out_.sizes) throw ProtocolError("peer reports different column sizes");
  }

  void confirm_b() {
    auto sizes = read_sizes(ch_.recv_expect(MessageType::kSizeConfirm, kConfirmSid));
    for (size_t b = 0; b < m_; ++b) {
      if (out_.peer_matched[b] && sizes[b] != out_.sizes[b]) {
        throw ProtocolError("column " + std::to_string(b + 1) + " size disagrees (" +
                            std::to_string(out_.sizes[b]) + " here, " + std::to_string(sizes[b]) +
                            " at peer)");
      }
    }
    out_.sizes = sizes;
    ch_.send(Frame{MessageType::kSizeConfirm, std::string(kConfirmSid), sizes_blob()});
  }

  Party party_;
  const SessionConfig& cfg_;
  Channel& ch_;
  Rng& rng_;
  GroupPtr group_;
  PrfParty prf_;
  size_t m_ = 0;

  PaddedTable padded_;
  size_t n_self_ = 0;
  size_t n_peer_ = 0;
  std::vector<std::vector<std::string>> ids_;

  AheKeypair keys_;
  AhePublicKey peer_pk_;
  std::vector<std::vector<Ciphertext>> peer_cts_;

  std::vector<TagSet> peer_tags_;
  std::vector<bool> peer_alive_;
  std::vector<Matched> matched_;
  std::vector<size_t> matched_columns_;

  uint64_t elements_sent_ = 0;
  WfmOutput out_;
};

}  // namespace

WfmOutput run_party_a(const IdTable& table, const SessionConfig& cfg, Channel& ch, Rng& rng) {
  return Session(Party::kA, table, cfg, ch, rng).run();
}

WfmOutput run_party_b(const IdTable& table, const SessionConfig& cfg, Channel& ch, Rng& rng) {
  return Session(Party::kB, table, cfg, ch, rng).run();
}

}  // namespace wfm
