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

#include "icnfed/icn/fib.hpp"

#include <algorithm>
#include <functional>

namespace icnfed::icn {

std::optional<FaceId> FibEntry::best_face(std::optional<FaceId> exclude) const {
  std::optional<FaceId> best;
  std::int64_t best_cost = 0;
  for (const auto& [face, cost] : upstreams) {
    if (exclude && face == *exclude) continue;
    if (!best || cost < best_cost) {
      best = face;
      best_cost = cost;
    }
  }
  return best;
}

struct Fib::Node {
  std::unordered_map<std::string, std::unique_ptr<Node>> children;
  std::optional<FibEntry> entry;
};

Fib::Fib() : root_(std::make_unique<Node>()) {}
Fib::~Fib() = default;
Fib::Fib(Fib&&) noexcept = default;
Fib& Fib::operator=(Fib&&) noexcept = default;

Fib::Node* Fib::walk(const Name& prefix, bool create) {
  Node* node = root_.get();
  for (const auto& c : prefix.components()) {
    auto it = node->children.find(c);
    if (it == node->children.end()) {
      if (!create) return nullptr;
      it = node->children.emplace(c, std::make_unique<Node>()).first;
    }
    node = it->second.get();
  }
  return node;
}

const Fib::Node* Fib::walk(const Name& prefix) const {
  const Node* node = root_.get();
  for (const auto& c : prefix.components()) {
    auto it = node->children.find(c);
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return node;
}

void Fib::add_next_hop(const Name& prefix, FaceId face, std::int64_t cost, bool multicast) {
  auto* node = walk(prefix, true);
  if (!node->entry) {
    node->entry = FibEntry{prefix, {}, multicast};
    ++size_;
  }
  node->entry->upstreams[face] = cost;
  node->entry->multicast = multicast;
}

void Fib::remove_next_hop(const Name& prefix, FaceId face) {
  auto* node = walk(prefix, false);
  if (!node || !node->entry) return;
  node->entry->upstreams.erase(face);
  if (node->entry->upstreams.empty()) {
    node->entry.reset();
    --size_;
  }
}

void Fib::erase(const Name& prefix) {
  auto* node = walk(prefix, false);
  if (!node || !node->entry) return;
  node->entry.reset();
  --size_;
}

const FibEntry* Fib::lpm(const Name& name) const {
  const Node* node = root_.get();
  const FibEntry* best = node->entry ? &*node->entry : nullptr;
  for (const auto& c : name.components()) {
    auto it = node->children.find(c);
    if (it == node->children.end()) break;
    node = it->second.get();
    if (node->entry) best = &*node->entry;
  }
  return best;
}

const FibEntry* Fib::find(const Name& prefix) const {
  const auto* node = walk(prefix);
  return node && node->entry ? &*node->entry : nullptr;
}

std::vector<FibEntry> Fib::entries() const {
  std::vector<FibEntry> out;
  std::function<void(const Node&)> visit = [&](const Node& n) {
    if (n.entry) out.push_back(*n.entry);
    for (const auto& [_, child] : n.children) visit(*child);
  };
  visit(*root_);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.prefix < b.prefix; });
  return out;
}

}  // namespace icnfed::icn
