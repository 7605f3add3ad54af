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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "icnfed/icn/packet.hpp"

namespace icnfed::icn {

struct FibEntry {
  Name prefix;
  std::map<FaceId, std::int64_t> upstreams;  // face -> routing cost
  bool multicast = false;

  /// Unicast choice: cheapest face other than `exclude`, ties to the lower id.
  std::optional<FaceId> best_face(std::optional<FaceId> exclude) const;
};

/// Name-prefix forwarding table backed by a component trie.
class Fib {
 public:
  Fib();
  ~Fib();
  Fib(Fib&&) noexcept;
  Fib& operator=(Fib&&) noexcept;

  /// Adds (or re-costs) a next hop. The multicast flag is per prefix; the last
  /// insert wins.
  void add_next_hop(const Name& prefix, FaceId face, std::int64_t cost, bool multicast = false);
  void remove_next_hop(const Name& prefix, FaceId face);
  void erase(const Name& prefix);

  /// Entry with the longest prefix of `name`, or nullptr.
  const FibEntry* lpm(const Name& name) const;
  const FibEntry* find(const Name& prefix) const;

  std::size_t size() const noexcept { return size_; }
  std::vector<FibEntry> entries() const;

 private:
  struct Node;
  Node* walk(const Name& prefix, bool create);
  const Node* walk(const Name& prefix) const;

  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

}  // namespace icnfed::icn
