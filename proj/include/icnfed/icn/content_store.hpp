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

#include <list>
#include <unordered_map>

#include "icnfed/common/time.hpp"
#include "icnfed/icn/packet.hpp"

namespace icnfed::icn {

/// Exact-name Data cache with LRU eviction. An entry is served only while
/// now <= insert_time + freshness; stale entries are dropped when touched.
class ContentStore {
 public:
  explicit ContentStore(std::size_t capacity = 256000) : capacity_(capacity) {}

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return index_.size(); }

  /// Ignores packets with zero freshness and a zero-capacity store.
  void insert(const DataPtr& data, SimTime now);
  /// Fresh entry or nullptr. Counts a hit or a miss.
  DataPtr find(const Name& name, SimTime now);
  void clear();

  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }
  std::uint64_t evictions() const noexcept { return evictions_; }

 private:
  struct Entry {
    DataPtr data;
    SimTime inserted;
  };
  std::size_t capacity_;
  std::list<Entry> lru_;  // front = most recently used
  std::unordered_map<Name, std::list<Entry>::iterator, NameHash> index_;
  std::uint64_t hits_ = 0, misses_ = 0, evictions_ = 0;
};

}  // namespace icnfed::icn
