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

#pragma once

#include <cstdint>
#include <deque>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "icnfed/common/time.hpp"
#include "icnfed/icn/packet.hpp"

namespace icnfed::icn {

struct PitEntry {
  Name name;
  std::set<FaceId> downstream;
  std::vector<std::uint64_t> nonces;
  SimTime expiry = 0;
};

/// Pending Interest table with lazy expiry plus a dead-nonce list that
/// remembers (name, nonce) pairs of satisfied or expired entries for one
/// lifetime, so looping copies are recognised after the entry is gone.
class Pit {
 public:
  /// Live entry for `name`, expiring it first if its lifetime has passed.
  PitEntry* find(const Name& name, SimTime now);
  PitEntry& create(const Name& name, SimTime expiry);
  /// Removes the entry (after Data consumed it) and retires its nonces.
  void consume(const Name& name, SimTime now);

  bool is_dead_nonce(const Name& name, std::uint64_t nonce, SimTime now);

  /// Drops every entry whose lifetime has passed; returns how many.
  std::size_t purge(SimTime now);

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t expired() const noexcept { return expired_; }

 private:
  void retire(const PitEntry& e, SimTime until);
  void trim_dead_nonces(SimTime now);

  std::unordered_map<Name, PitEntry, NameHash> entries_;
  using Expiry = std::pair<SimTime, Name>;
  std::priority_queue<Expiry, std::vector<Expiry>, std::greater<>> expiries_;

  struct DeadNonce {
    std::size_t key;
    SimTime until;
  };
  std::deque<DeadNonce> dead_order_;
  std::unordered_multiset<std::size_t> dead_;
  std::uint64_t expired_ = 0;
};

}  // namespace icnfed::icn
