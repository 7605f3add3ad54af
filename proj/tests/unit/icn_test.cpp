// Copyright 2026 The icnfed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "icnfed/common/error.hpp"
#include "icnfed/icn/forwarder.hpp"
#include "icnfed/icn/segment.hpp"

namespace icnfed::icn {
namespace {

Name N(std::string_view s) { return Name::parse(s); }

struct Keys {
  TrustAnchor anchor{to_bytes("anchor-secret")};
  KeyRegistry registry{anchor.verification_key()};
  Signer signer = add("dbs#2/KEY");

  Signer add(std::string_view locator) {
    auto [s, cert] = anchor.issue(N(locator));
    EXPECT_TRUE(registry.add(cert));
    return s;
  }
};

DataPtr make_data(const Signer& signer, std::string_view name, std::string_view payload,
                  std::int64_t freshness_ms) {
  DataPacket d{N(name), to_bytes(payload), freshness_ms, {}};
  sign(d, signer);
  return std::make_shared<const DataPacket>(std::move(d));
}

InterestPtr make_interest(std::string_view name, std::uint64_t nonce,
                          std::int64_t lifetime_ms = kDefaultLifetimeMs) {
  return std::make_shared<const InterestPacket>(InterestPacket{N(name), nonce, lifetime_ms, {}});
}

TEST(PacketTest, InterestEncodingBytes) {
  InterestPacket p{N("a/bc"), 0x0102030405060708ULL, 4000, {}};
  Bytes expected = {0x05, 0x17,                                    // Interest
                    0x07, 0x07, 0x08, 0x01, 'a', 0x08, 0x02, 'b', 'c',  // Name
                    0x0A, 0x08, 1, 2, 3, 4, 5, 6, 7, 8,           // Nonce
                    0x0C, 0x02, 0x0F, 0xA0};                      // Lifetime 4000
  EXPECT_EQ(encode(p), expected);
  EXPECT_EQ(wire_size(p), expected.size());
}

TEST(PacketTest, RoundTripAndSizeAgree) {
  Keys keys;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    std::string payload(rng() % 5000, 'x');
    for (auto& c : payload) c = static_cast<char>(rng());
    DataPacket d{N("dbs#2/o/POI/" + std::to_string(i) + "-v1"), to_bytes(payload),
                 static_cast<std::int64_t>(rng() % 100000), {}};
    sign(d, keys.signer);
    auto wire = encode(d);
    EXPECT_EQ(wire.size(), wire_size(d));
    auto back = decode(wire);
    ASSERT_TRUE(std::holds_alternative<DataPtr>(back));
    EXPECT_EQ(*std::get<DataPtr>(back), d);

    InterestPacket q{d.name, rng(), static_cast<std::int64_t>(rng() % 70000), {}};
    if (i % 2) sign(q, keys.signer);
    auto iw = encode(q);
    EXPECT_EQ(iw.size(), wire_size(q));
    EXPECT_EQ(*std::get<InterestPtr>(decode(iw)), q);
  }
}

TEST(PacketTest, DecodeRejectsGarbage) {
  EXPECT_THROW(decode(Bytes{}), ParseError);
  EXPECT_THROW(decode(Bytes{0x05, 0x10, 0x07}), ParseError);
  EXPECT_THROW(decode(Bytes{0x09, 0x00}), ParseError);
  auto wire = encode(InterestPacket{N("a"), 1, 10, {}});
  wire.push_back(0);
  EXPECT_THROW(decode(wire), ParseError);
}

TEST(SecurityTest, SignVerifyRoundTrip) {
  Keys keys;
  auto d = make_data(keys.signer, "dbs#2/o/POI/17-v1", "payload", 1000);
  EXPECT_TRUE(verify(*d, keys.registry));
}

TEST(SecurityTest, EverySingleByteMutationFails) {
  Keys keys;
  auto d = *make_data(keys.signer, "dbs#2/o/POI/17-v1", "some payload bytes", 1000);
  for (std::size_t i = 0; i < d.payload.size(); ++i) {
    auto m = d;
    m.payload[i] ^= 0x01;
    EXPECT_FALSE(verify(m, keys.registry));
  }
  for (std::size_t c = 0; c < d.name.size(); ++c) {
    for (std::size_t i = 0; i < d.name[c].size(); ++i) {
      auto comps = d.name.components();
      comps[c][i] = comps[c][i] == 'z' ? 'y' : 'z';
      auto m = d;
      m.name = Name(comps);
      EXPECT_FALSE(verify(m, keys.registry));
    }
  }
  auto m = d;
  m.freshness_ms += 1;
  EXPECT_FALSE(verify(m, keys.registry));
}

TEST(SecurityTest, UnknownKeyLocatorFails) {
  Keys keys;
  TrustAnchor rogue(to_bytes("rogue"));
  auto [signer, cert] = rogue.issue(N("evil/KEY"));
  EXPECT_FALSE(keys.registry.add(cert));
  auto d = make_data(signer, "dbs#2/o/POI/17-v1", "x", 1000);
  EXPECT_FALSE(verify(*d, keys.registry));
  // A forged certificate reusing a known locator with a new key is refused.
  Certificate forged{N("dbs#2/KEY"), to_bytes("other"), cert.anchor_signature};
  EXPECT_FALSE(keys.registry.add(forged));
}

TEST(SecurityTest, InterestSignatures) {
  Keys keys;
  InterestPacket q{N("dbs#2/q/POI/stmt/1234"), 9, 4000, {}};
  EXPECT_FALSE(verify(q, keys.registry));
  sign(q, keys.signer);
  EXPECT_TRUE(verify(q, keys.registry));
  auto m = q;
  m.name = N("dbs#2/q/POI/stmt/1235");
  EXPECT_FALSE(verify(m, keys.registry));
}

TEST(FibTest, LongestPrefixMatch) {
  Fib fib;
  fib.add_next_hop(N("dbs#2"), 1, 10);
  fib.add_next_hop(N("dbs#2/index"), 2, 10);
  ASSERT_NE(fib.lpm(N("dbs#2/index/data/version=3")), nullptr);
  EXPECT_EQ(fib.lpm(N("dbs#2/index/data/version=3"))->prefix, N("dbs#2/index"));
  EXPECT_EQ(fib.lpm(N("dbs#2/o/POI/1-v1"))->prefix, N("dbs#2"));
  EXPECT_EQ(fib.lpm(N("dbs#3/o")), nullptr);
  EXPECT_EQ(fib.lpm(N("dbs")), nullptr);

  fib.add_next_hop(N("index/notify"), 1, 5, true);
  fib.add_next_hop(N("index/notify"), 2, 5, true);
  const auto* e = fib.lpm(N("index/notify/dbs#1/version=9"));
  ASSERT_NE(e, nullptr);
  EXPECT_TRUE(e->multicast);
  EXPECT_EQ(e->upstreams.size(), 2u);
  EXPECT_EQ(fib.size(), 3u);
  fib.add_next_hop(N("index/notify"), 2, 5, true);
  EXPECT_EQ(fib.size(), 3u);
  fib.remove_next_hop(N("dbs#2/index"), 2);
  EXPECT_EQ(fib.lpm(N("dbs#2/index/data"))->prefix, N("dbs#2"));
  EXPECT_EQ(fib.size(), 2u);
}

TEST(FibTest, LpmMatchesLinearOracle) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  auto random_name = [&](std::size_t max_len) {
    std::vector<std::string> comps(1 + rng() % max_len);
    for (auto& c : comps) c = alphabet[rng() % alphabet.size()];
    return Name(comps);
  };
  Fib fib;
  std::vector<Name> prefixes;
  for (int i = 0; i < 30; ++i) {
    auto p = random_name(3);
    fib.add_next_hop(p, static_cast<FaceId>(i), 1);
    prefixes.push_back(p);
  }
  for (int i = 0; i < 1000; ++i) {
    auto n = random_name(5);
    const Name* best = nullptr;
    for (const auto& p : prefixes)
      if (n.has_prefix(p) && (!best || p.size() > best->size())) best = &p;
    const auto* got = fib.lpm(n);
    if (!best) {
      EXPECT_EQ(got, nullptr);
    } else {
      ASSERT_NE(got, nullptr);
      EXPECT_EQ(got->prefix, *best);
    }
  }
}

TEST(FibTest, UnicastPicksCheapestOtherFace) {
  FibEntry e{N("x"), {{1, 30}, {2, 10}, {3, 10}}, false};
  EXPECT_EQ(e.best_face(std::nullopt), 2u);
  EXPECT_EQ(e.best_face(2), 3u);
  FibEntry single{N("x"), {{4, 1}}, false};
  EXPECT_EQ(single.best_face(4), std::nullopt);
}

class ForwarderTest : public ::testing::Test {
 protected:
  Keys keys;
  Forwarder fwd{ForwarderConfig{}, &keys.registry};
};

TEST_F(ForwarderTest, CacheHitAnswersLocally) {
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  fwd.pit().create(N("dbs#2/o/POI/17-v1"), 4 * kSecond).downstream.insert(1);
  fwd.on_data(9, make_data(keys.signer, "dbs#2/o/POI/17-v1", "obj", 60000), 0);
  auto before = fwd.counters().interests_sent;
  auto out = fwd.on_interest(3, make_interest("dbs#2/o/POI/17-v1", 77), kSecond);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].face, 3u);
  EXPECT_TRUE(std::holds_alternative<DataPtr>(out[0].packet));
  EXPECT_EQ(fwd.counters().interests_sent, before);
  EXPECT_EQ(fwd.pit().size(), 0u);
}

TEST_F(ForwarderTest, AggregatesSameNameFromTwoFaces) {
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  auto a = fwd.on_interest(1, make_interest("dbs#2/o/POI/17-v1", 1), 0);
  auto b = fwd.on_interest(2, make_interest("dbs#2/o/POI/17-v1", 2), 10);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].face, 9u);
  EXPECT_TRUE(b.empty());
  auto* entry = fwd.pit().find(N("dbs#2/o/POI/17-v1"), 10);
  ASSERT_NE(entry, nullptr);
  EXPECT_EQ(entry->downstream, (std::set<FaceId>{1, 2}));
}

TEST_F(ForwarderTest, MulticastPrefixFansOut) {
  fwd.fib().add_next_hop(N("index/notify"), 1, 5, true);
  fwd.fib().add_next_hop(N("index/notify"), 2, 5, true);
  auto out = fwd.on_interest(0, make_interest("index/notify/dbs#1/version=3", 5), 0);
  EXPECT_EQ(out.size(), 2u);
  auto from_member = fwd.on_interest(1, make_interest("index/notify/dbs#3/version=1", 6), 0);
  ASSERT_EQ(from_member.size(), 1u);
  EXPECT_EQ(from_member[0].face, 2u);
}

TEST_F(ForwarderTest, DataFansOutToPitFaces) {
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  for (FaceId f : {1u, 2u, 3u}) fwd.on_interest(f, make_interest("dbs#2/o/POI/17-v1", f), 0);
  auto out = fwd.on_data(9, make_data(keys.signer, "dbs#2/o/POI/17-v1", "obj", 1000), 5);
  EXPECT_EQ(out.size(), 3u);
  EXPECT_EQ(fwd.pit().size(), 0u);
  EXPECT_EQ(fwd.pit().find(N("dbs#2/o/POI/17-v1"), 5), nullptr);
}

TEST_F(ForwarderTest, ZeroFreshnessIsNeverCached) {
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  fwd.on_interest(1, make_interest("dbs#2/q/POI/s/1", 1), 0);
  fwd.on_data(9, make_data(keys.signer, "dbs#2/q/POI/s/1", "names", 0), 1);
  EXPECT_EQ(fwd.content_store().size(), 0u);
  auto again = fwd.on_interest(1, make_interest("dbs#2/q/POI/s/1", 2), 2);
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(again[0].face, 9u);
}

TEST_F(ForwarderTest, TamperedDataDropped) {
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  fwd.on_interest(1, make_interest("dbs#2/o/POI/17-v1", 1), 0);
  auto good = make_data(keys.signer, "dbs#2/o/POI/17-v1", "obj", 1000);
  auto bad = std::make_shared<DataPacket>(*good);
  bad->payload[0] ^= 0xFF;
  EXPECT_TRUE(fwd.on_data(9, bad, 1).empty());
  EXPECT_EQ(fwd.counters().drop_bad_signature, 1u);
  EXPECT_EQ(fwd.content_store().size(), 0u);
  EXPECT_EQ(fwd.on_data(9, good, 2).size(), 1u);
}

TEST_F(ForwarderTest, DropsCountedForNoRouteDuplicateUnsolicited) {
  EXPECT_TRUE(fwd.on_interest(1, make_interest("nowhere/x", 1), 0).empty());
  EXPECT_EQ(fwd.counters().drop_no_route, 1u);
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  fwd.on_interest(1, make_interest("dbs#2/a", 42), 0);
  EXPECT_TRUE(fwd.on_interest(2, make_interest("dbs#2/a", 42), 1).empty());
  EXPECT_EQ(fwd.counters().drop_duplicate, 1u);
  EXPECT_TRUE(fwd.on_data(9, make_data(keys.signer, "dbs#2/b", "x", 10), 2).empty());
  EXPECT_EQ(fwd.counters().drop_unsolicited, 1u);
  // The only route points back where the Interest came from.
  EXPECT_TRUE(fwd.on_interest(9, make_interest("dbs#2/c", 3), 3).empty());
  EXPECT_EQ(fwd.counters().drop_no_route, 2u);
}

TEST_F(ForwarderTest, ExpiredPitEntryDropsLateData) {
  fwd.fib().add_next_hop(N("dbs#2"), 9, 1);
  fwd.on_interest(1, make_interest("dbs#2/a", 1, 100), 0);
  EXPECT_TRUE(fwd.on_data(9, make_data(keys.signer, "dbs#2/a", "x", 10), 101 * kMillisecond).empty());
  EXPECT_EQ(fwd.counters().drop_unsolicited, 1u);
  // After expiry a new Interest is forwarded again.
  EXPECT_EQ(fwd.on_interest(1, make_interest("dbs#2/a", 2, 100), 200 * kMillisecond).size(), 1u);
}

TEST_F(ForwarderTest, PitAggregationProperty) {
  fwd.fib().add_next_hop(N("dbs#2"), 100, 1);
  std::mt19937_64 rng(8);
  SimTime now = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto name = "dbs#2/o/d/" + std::to_string(trial) + "-v1";
    auto k = 1 + rng() % 20;
    std::uint64_t upstream = 0;
    std::set<FaceId> faces;
    for (std::uint64_t i = 0; i < k; ++i) {
      auto face = static_cast<FaceId>(rng() % 50);
      faces.insert(face);
      now += static_cast<SimTime>(rng() % 1000);
      upstream += fwd.on_interest(face, make_interest(name, rng()), now).size();
    }
    EXPECT_EQ(upstream, 1u);
    auto out = fwd.on_data(100, make_data(keys.signer, name, "x", 0), now + 1);
    EXPECT_EQ(out.size(), faces.size());
  }
}

TEST(ContentStoreTest, NeverServesAfterFreshness) {
  Keys keys;
  ContentStore cs(100);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto freshness = static_cast<std::int64_t>(1 + rng() % 50);
    auto name = "n/" + std::to_string(i % 37);
    SimTime t0 = static_cast<SimTime>(i) * 10 * kMillisecond;
    cs.insert(make_data(keys.signer, name, "x", freshness), t0);
    for (SimTime dt : {SimTime{0}, freshness * kMillisecond, freshness * kMillisecond + 1}) {
      auto hit = cs.find(N(name), t0 + dt);
      if (dt <= freshness * kMillisecond) {
        ASSERT_NE(hit, nullptr);
      } else {
        EXPECT_EQ(hit, nullptr);
        cs.insert(make_data(keys.signer, name, "x", freshness), t0);
      }
    }
  }
}

TEST(ContentStoreTest, LruEviction) {
  Keys keys;
  ContentStore cs(2);
  cs.insert(make_data(keys.signer, "a", "1", 1000), 0);
  cs.insert(make_data(keys.signer, "b", "2", 1000), 0);
  EXPECT_NE(cs.find(N("a"), 1), nullptr);
  cs.insert(make_data(keys.signer, "c", "3", 1000), 2);
  EXPECT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs.find(N("b"), 3), nullptr);
  EXPECT_NE(cs.find(N("a"), 3), nullptr);
  EXPECT_NE(cs.find(N("c"), 3), nullptr);
  EXPECT_EQ(cs.evictions(), 1u);
}

TEST(SegmentTest, SplitAndReassemble) {
  std::mt19937_64 rng(2);
  for (std::size_t len : {0, 1, 4087, 4088, 4089, 20000}) {
    Bytes content(len);
    for (auto& b : content) b = static_cast<std::uint8_t>(rng());
    auto segs = segment(content, 4096);
    EXPECT_EQ(segs.size(), len == 0 ? 1 : (len + 4087) / 4088);
    for (const auto& s : segs) EXPECT_LE(s.size(), 4096u);
    std::shuffle(segs.begin(), segs.end(), rng);
    Reassembly r;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      EXPECT_EQ(r.add(segs[i]), i + 1 == segs.size());
      r.add(segs[i]);  // duplicates are harmless
    }
    EXPECT_EQ(r.content(), content);
  }
  EXPECT_EQ(segment_name(N("dbs#1/index/data/version=3"), 2).to_string(),
            "dbs#1/index/data/version=3/s2");
  EXPECT_EQ(segment_index(N("x/s12")), 12u);
  EXPECT_EQ(segment_index(N("x/sx")), std::nullopt);
  EXPECT_EQ(segment_index(N("x/version=3")), std::nullopt);
}

}  // namespace
}  // namespace icnfed::icn
