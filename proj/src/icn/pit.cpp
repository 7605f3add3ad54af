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

#include "icnfed/icn/pit.hpp"

namespace icnfed::icn {

namespace {

constexpr SimTime kDeadNonceLifetime = kDefaultLifetimeMs * kMillisecond;

std::size_t nonce_key(const Name& name, std::uint64_t nonce) {
  return NameHash{}(name) ^ (nonce * 0x9E3779B97F4A7C15ULL);
}

}  // namespace

PitEntry* Pit::find(const Name& name, SimTime now) {
  auto it = entries_.find(name);
  if (it == entries_.end()) return nullptr;
  if (it->second.expiry < now) {
    retire(it->second, now + kDeadNonceLifetime);
    entries_.erase(it);
    ++expired_;
    return nullptr;
  }
  return &it->second;
}

PitEntry& Pit::create(const Name& name, SimTime expiry) {
  auto& e = entries_[name];
  e = PitEntry{name, {}, {}, expiry};
  expiries_.emplace(expiry, name);
  return e;
}

void Pit::consume(const Name& name, SimTime now) {
  auto it = entries_.find(name);
  if (it == entries_.end()) return;
  retire(it->second, now + kDeadNonceLifetime);
  entries_.erase(it);
}

void Pit::retire(const PitEntry& e, SimTime until) {
  for (auto nonce : e.nonces) {
    auto key = nonce_key(e.name, nonce);
    dead_.insert(key);
    dead_order_.push_back(DeadNonce{key, until});
  }
}

void Pit::trim_dead_nonces(SimTime now) {
  while (!dead_order_.empty() && dead_order_.front().until < now) {
    dead_.erase(dead_.find(dead_order_.front().key));
    dead_order_.pop_front();
  }
}

bool Pit::is_dead_nonce(const Name& name, std::uint64_t nonce, SimTime now) {
  trim_dead_nonces(now);
  return dead_.contains(nonce_key(name, nonce));
}

std::size_t Pit::purge(SimTime now) {
  std::size_t n = 0;
  while (!expiries_.empty() && expiries_.top().first < now) {
    auto [expiry, name] = expiries_.top();
    expiries_.pop();
    auto it = entries_.find(name);
    // Only the heap record matching the live entry counts; others are stale.
    if (it != entries_.end() && it->second.expiry == expiry) {
      retire(it->second, now + kDeadNonceLifetime);
      entries_.erase(it);
      ++expired_;
      ++n;
    }
  }
  trim_dead_nonces(now);
  return n;
}

}  // namespace icnfed::icn
