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

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "doctest.h"
#include "wfm/channel.hpp"
#include "wfm/durprf.hpp"
#include "wfm/errors.hpp"

using namespace wfm;

namespace {

std::vector<std::string> random_ids(size_t n, Rng& rng) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) ids.push_back("user-" + to_hex(rng.bytes(8)));
  return ids;
}

struct Pair {
  Rng ra = Rng::from_seed(101), rb = Rng::from_seed(202);
  std::unique_ptr<Channel> ca, cb;
  PrfParty a, b;
  explicit Pair(GroupPtr g) : a(g, ra, Exec::kSerial), b(g, rb, Exec::kSerial) {
    auto [x, y] = channel_pair();
    ca = std::move(x);
    cb = std::move(y);
  }
  void init(const std::string& sid) {
    a.init(sid);
    b.init(sid);
  }
  // B's ids evaluated, A holds the result.
  TagSet eval_b_to_a(const std::string& sid, std::span<const std::string> ids,
                     TagWidth w = TagWidth::kFull) {
    b.eval_send(sid, ids, *cb);
    return a.eval_recv(sid, *ca, w);
  }
  std::pair<TagSet, TagSet> update_by_a(const std::string& s0, const std::string& s1,
                                        const TagSet& tags, TagWidth w = TagWidth::kFull) {
    TagSet assisted;
    std::thread t([&] { assisted = b.assist(s0, s1, *cb, w); });
    TagSet updated = a.update(s0, s1, tags, *ca, w);
    t.join();
    return {updated, assisted};
  }
  Scalar joint(const std::string& sid) const {
    return a.group().mul(a.key_for_testing(sid), b.key_for_testing(sid));
  }
};

}  // namespace

TEST_SUITE("durprf") {

TEST_CASE("init") {
  Pair p(make_p256());
  p.a.init("col1");
  CHECK_THROWS_AS(p.a.init("col1"), ProtocolError);
  p.a.init("col2");
  CHECK_FALSE(p.a.key_for_testing("col1") == p.a.key_for_testing("col2"));
  CHECK(p.a.has_session("col2"));
  CHECK_FALSE(p.a.has_session("col3"));

  Rng r1 = Rng::from_seed(4), r2 = Rng::from_seed(4);
  PrfParty x(make_p256(), r1), y(make_p256(), r2);
  x.init("s");
  y.init("s");
  CHECK(x.key_for_testing("s") == y.key_for_testing("s"));
}

TEST_CASE("eval_send transmits H(x)^k in order") {
  auto g = make_p256();
  Pair p(g);
  p.init("s");
  Rng rng = Rng::from_seed(1);
  auto ids = random_ids(20, rng);
  p.b.eval_send("s", ids, *p.cb);
  Frame f = p.ca->recv_expect(MessageType::kEvalBatch, "s");
  ByteReader r(f.payload);
  REQUIRE(r.u32() == 20);
  for (const auto& id : ids) {
    auto h = g->deserialize(r.take(g->element_size()));
    CHECK(h == g->exp(g->hash_to_group(as_bytes(id)), p.b.key_for_testing("s")));
  }
  CHECK(r.done());
}

TEST_CASE("joint-key oracle on 1000 ids, then update") {
  auto g = make_p256();
  Pair p(g);
  p.init("e1");
  p.init("e2");
  Rng rng = Rng::from_seed(2);
  auto ids = random_ids(1000, rng);
  TagSet tags = p.eval_b_to_a("e1", ids);
  REQUIRE(tags.size() == ids.size());
  Scalar k1 = p.joint("e1"), k2 = p.joint("e2");
  std::vector<GroupElement> hashed;
  for (const auto& id : ids) hashed.push_back(g->hash_to_group(as_bytes(id)));
  for (size_t i = 0; i < ids.size(); ++i) {
    REQUIRE(tags.elements[i] == g->exp(hashed[i], k1));
  }
  auto [updated, assisted] = p.update_by_a("e1", "e2", tags);
  REQUIRE(updated.size() == ids.size());
  CHECK(updated.sid == "e2");
  std::unordered_set<TagBytes> old_set(tags.tags.begin(), tags.tags.end());
  for (size_t i = 0; i < ids.size(); ++i) {
    // index order preserved: position i is still ids[i]
    REQUIRE(updated.elements[i] == g->exp(hashed[i], k2));
    CHECK_FALSE(old_set.count(updated.tags[i]));
  }
  // the assisting side saw the same values in shuffled order
  std::vector<TagBytes> x = updated.tags, y = assisted.tags;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  CHECK(x == y);
  CHECK_FALSE(assisted.tags == updated.tags);
}

TEST_CASE("both directions under one sid give equal tags") {
  Pair p(make_p256());
  p.init("s");
  std::vector<std::string> ids{"alice@example.com", "bob@example.com"};
  TagSet at_a = p.eval_b_to_a("s", ids);
  p.a.eval_send("s", ids, *p.ca);
  TagSet at_b = p.b.eval_recv("s", *p.cb);
  CHECK(at_a.tags == at_b.tags);
}

TEST_CASE("unit keys on the test group echo the hash") {
  auto g = make_test_group(1019, 509);
  Pair p(g);
  p.init("s");
  p.init("t");
  auto one = g->make_scalar(1);
  for (auto* party : {&p.a, &p.b}) {
    party->set_key_for_testing("s", one);
    party->set_key_for_testing("t", one);
  }
  std::vector<std::string> ids{"a"};
  TagSet t = p.eval_b_to_a("s", ids);
  CHECK(t.elements[0] == g->hash_to_group(as_bytes("a")));
  auto [u, assisted] = p.update_by_a("s", "t", t);
  CHECK(u.elements[0] == t.elements[0]);
  CHECK(assisted.elements[0] == t.elements[0]);
}

TEST_CASE("empty update is one empty round trip") {
  Pair p(make_p256());
  p.init("s");
  p.init("t");
  TagSet empty = p.eval_b_to_a("s", {});
  CHECK(empty.size() == 0);
  uint64_t before = p.ca->stats().frames_sent;
  auto [u, assisted] = p.update_by_a("s", "t", empty);
  CHECK(u.size() == 0);
  CHECK(assisted.size() == 0);
  CHECK(p.ca->stats().frames_sent == before + 1);
  CHECK(p.cb->stats().frames_received == p.ca->stats().frames_sent);
}

TEST_CASE("different keys give disjoint transmitted sets") {
  Pair p(make_p256());
  p.init("s1");
  p.init("s2");
  Rng rng = Rng::from_seed(3);
  auto ids = random_ids(50, rng);
  TagSet t1 = p.eval_b_to_a("s1", ids), t2 = p.eval_b_to_a("s2", ids);
  std::unordered_set<TagBytes> s(t1.tags.begin(), t1.tags.end());
  for (const auto& t : t2.tags) CHECK_FALSE(s.count(t));
}

TEST_CASE("96-bit replies match the truncated full tags") {
  auto g = make_p256();
  Pair p(g);
  p.init("s");
  p.init("t");
  Rng rng = Rng::from_seed(6);
  auto ids = random_ids(30, rng);
  TagSet t = p.eval_b_to_a("s", ids);
  auto [u, assisted] = p.update_by_a("s", "t", t, TagWidth::k96);
  Scalar k = p.joint("t");
  for (size_t i = 0; i < ids.size(); ++i) {
    CHECK(u.tags[i].bytes.size() == 12);
    CHECK(u.tags[i] == g->to_tag(g->exp(g->hash_to_group(as_bytes(ids[i])), k), TagWidth::k96));
  }
}

TEST_CASE("assist view carries only group elements") {
  auto g = make_p256();
  Pair p(g);
  p.init("s");
  p.init("t");
  std::vector<std::string> ids{"needle-identifier-1", "needle-identifier-2"};
  std::vector<Frame> seen;
  p.cb->set_observer([&](bool out, const Frame& f) {
    if (!out) seen.push_back(f);
  });
  TagSet t = p.eval_b_to_a("s", ids);
  p.update_by_a("s", "t", t);
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].type == MessageType::kUpdateBatch);
  ByteReader r(seen[0].payload);
  CHECK(r.str16() == "t");
  CHECK(r.u8() == 0);
  uint32_t n = r.u32();
  CHECK(n == 2);
  for (uint32_t i = 0; i < n; ++i) CHECK_NOTHROW(g->deserialize(r.take(g->element_size())));
  CHECK(r.done());
}

TEST_CASE("misuse is rejected") {
  Pair p(make_p256());
  p.init("s");
  p.init("t");
  TagSet t = p.eval_b_to_a("s", std::vector<std::string>{"x"});
  CHECK_THROWS_AS(p.a.update("t", "s", t, *p.ca), ProtocolError);
  CHECK_THROWS_AS(p.a.eval_send("nope", std::vector<std::string>{"x"}, *p.ca), ProtocolError);
}

}  // TEST_SUITE
