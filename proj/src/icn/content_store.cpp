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

#include "icnfed/icn/content_store.hpp"

namespace icnfed::icn {

void ContentStore::insert(const DataPtr& data, SimTime now) {
  if (capacity_ == 0 || data->freshness_ms <= 0) return;
  auto it = index_.find(data->name);
  if (it != index_.end()) {
    lru_.erase(it->second);
    index_.erase(it);
  }
  lru_.push_front(Entry{data, now});
  index_.emplace(data->name, lru_.begin());
  while (index_.size() > capacity_) {
    index_.erase(lru_.back().data->name);
    lru_.pop_back();
    ++evictions_;
  }
}

DataPtr ContentStore::find(const Name& name, SimTime now) {
  auto it = index_.find(name);
  if (it == index_.end()) {
    ++misses_;
    return nullptr;
  }
  const auto& e = *it->second;
  if (e.inserted + e.data->freshness_ms * kMillisecond < now) {
    lru_.erase(it->second);
    index_.erase(it);
    ++misses_;
    return nullptr;
  }
  lru_.splice(lru_.begin(), lru_, it->second);
  ++hits_;
  return it->second->data;
}

void ContentStore::clear() {
  lru_.clear();
  index_.clear();
}

}  // namespace icnfed::icn
