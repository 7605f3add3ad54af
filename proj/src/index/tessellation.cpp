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

#include "icnfed/index/tessellation.hpp"

#include <algorithm>

#include "icnfed/common/error.hpp"

namespace icnfed::index {

std::vector<Tile> compute_smin(const store::SpatialStore& store, const std::set<std::string>& dids) {
  const auto& grid = store.grid();
  std::vector<Tile> out;
  store.for_each_object([&](const store::SpatialObject& obj) {
    if (!dids.empty() && !dids.contains(obj.did)) return;
    if (const auto* p = std::get_if<Point>(&obj.geometry)) {
      out.push_back(grid.tile_of(*p, grid.finest_level()));
      return;
    }
    grid.covering_range(std::get<Rect>(obj.geometry), grid.finest_level())
        .for_each([&](const Tile& t) { out.push_back(t); });
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TileTree::TileTree(const std::vector<Tile>& smin, int levels)
    : levels_(levels),
      by_level_(static_cast<std::size_t>(levels)),
      alive_at_level_(static_cast<std::size_t>(levels), 0),
      leaves_at_level_(static_cast<std::size_t>(levels), 0) {
  Grid(levels).check_level(levels - 1);
  for (const auto& leaf : smin) {
    if (leaf.level != levels - 1) throw InvalidArgument("S_min tile not at finest level: " + to_string(leaf));
    if (by_level_.back().contains(leaf)) continue;
    std::int32_t child = -1;
    for (int level = levels - 1; level >= 0; --level) {
      auto t = ancestor(leaf, level);
      auto& index = by_level_[static_cast<std::size_t>(level)];
      auto [it, fresh] = index.try_emplace(t, static_cast<std::int32_t>(nodes_.size()));
      if (fresh) {
        nodes_.push_back(Node{t, -1, {}, 0, true, false});
        ++alive_at_level_[static_cast<std::size_t>(level)];
      }
      auto& node = nodes_[static_cast<std::size_t>(it->second)];
      ++node.smin_below;
      if (child >= 0) {
        node.children.push_back(child);
        nodes_[static_cast<std::size_t>(child)].parent = it->second;
      }
      if (!fresh) {
        // Ancestors above an existing node only need their counts bumped.
        for (auto p = node.parent; p >= 0; p = nodes_[static_cast<std::size_t>(p)].parent)
          ++nodes_[static_cast<std::size_t>(p)].smin_below;
        break;
      }
      child = it->second;
    }
    auto& leaf_node = nodes_[static_cast<std::size_t>(by_level_.back().at(leaf))];
    leaf_node.leaf = true;
    ++leaves_at_level_.back();
    ++leaf_count_;
  }
}

std::vector<Tile> TileTree::leaves() const {
  std::vector<Tile> out;
  out.reserve(leaf_count_);
  for (const auto& n : nodes_)
    if (n.alive && n.leaf) out.push_back(n.tile);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t TileTree::collapsed_leaf_count(int j) const {
  Grid(levels_).check_level(j);
  std::size_t r = alive_at_level_[static_cast<std::size_t>(j)];
  for (int l = 0; l < j; ++l) r += leaves_at_level_[static_cast<std::size_t>(l)];
  return r;
}

std::int32_t TileTree::node_of(const Tile& t) const {
  if (t.level < 0 || t.level >= levels_) throw NotFound("tile outside tree: " + to_string(t));
  const auto& index = by_level_[static_cast<std::size_t>(t.level)];
  auto it = index.find(t);
  if (it == index.end()) throw NotFound("tile outside tree: " + to_string(t));
  return it->second;
}

AreaUnits TileTree::cost(const Tile& t) const {
  const auto& n = nodes_[static_cast<std::size_t>(node_of(t))];
  return tile_area_units(t) - n.smin_below * tile_area_units(levels_ - 1);
}

std::vector<Tile> TileTree::candidates(int level) const {
  Grid(levels_).check_level(level);
  std::vector<std::pair<AreaUnits, Tile>> keyed;
  for (const auto& [tile, idx] : by_level_[static_cast<std::size_t>(level)]) {
    const auto& n = nodes_[static_cast<std::size_t>(idx)];
    if (n.alive && !n.leaf) keyed.emplace_back(cost(tile), tile);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Tile> out;
  out.reserve(keyed.size());
  for (const auto& [_, t] : keyed) out.push_back(t);
  return out;
}

void TileTree::prune_below(std::int32_t idx) {
  for (auto c : nodes_[static_cast<std::size_t>(idx)].children) {
    auto& child = nodes_[static_cast<std::size_t>(c)];
    if (!child.alive) continue;
    prune_below(c);
    child.alive = false;
    --alive_at_level_[static_cast<std::size_t>(child.tile.level)];
    if (child.leaf) {
      --leaves_at_level_[static_cast<std::size_t>(child.tile.level)];
      --leaf_count_;
    }
  }
}

void TileTree::collapse(const Tile& t) {
  auto idx = node_of(t);
  auto& n = nodes_[static_cast<std::size_t>(idx)];
  if (!n.alive) throw NotFound("tile already pruned: " + to_string(t));
  if (n.leaf) return;
  prune_below(idx);
  n.leaf = true;
  ++leaves_at_level_[static_cast<std::size_t>(t.level)];
  ++leaf_count_;
}

std::optional<int> next_level_needed(const TileTree& tree, std::size_t k) {
  if (tree.leaf_count() <= k) return std::nullopt;
  for (int i = 0; i + 1 < tree.levels(); ++i) {
    if (tree.collapsed_leaf_count(i) <= k && tree.collapsed_leaf_count(i + 1) > k) return i;
  }
  return std::nullopt;
}

std::vector<Tile> tessellate(const std::vector<Tile>& smin, std::size_t k, int levels) {
  TileTree tree(smin, levels);
  if (tree.root_count() > k) return uniform_tessellation(smin, 0);

  // The necessary level never decreases: collapsing a level-i node leaves
  // R_j unchanged for j <= i and can only lower it above. Level-i nodes are
  // therefore touched only by our own collapses once the search reaches i,
  // and each level's candidate order is computed once.
  int current = -1;
  std::vector<Tile> queue;
  std::size_t next = 0;
  while (tree.leaf_count() > k) {
    auto level = next_level_needed(tree, k);
    if (!level) break;
    if (*level != current) {
      current = *level;
      queue = tree.candidates(current);
      next = 0;
    }
    if (next == queue.size()) throw Error("tessellation ran out of level-" + std::to_string(current) + " candidates");
    tree.collapse(queue[next++]);
  }
  return tree.leaves();
}

std::vector<Tile> uniform_tessellation(const std::vector<Tile>& smin, int level) {
  std::vector<Tile> out;
  out.reserve(smin.size());
  for (const auto& t : smin) out.push_back(ancestor(t, level));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AreaUnits tessellation_cost(const std::vector<Tile>& tiles, const std::vector<Tile>& smin) {
  std::unordered_map<Tile, std::int64_t, TileHash> below;
  for (const auto& t : tiles) below.emplace(t, 0);
  for (const auto& leaf : smin) {
    for (int level = leaf.level; level >= 0; --level) {
      auto it = below.find(ancestor(leaf, level));
      if (it != below.end()) ++it->second;
    }
  }
  AreaUnits total = 0;
  for (const auto& t : tiles) {
    AreaUnits covered = smin.empty() ? 0 : below.at(t) * tile_area_units(smin.front().level);
    total += tile_area_units(t) - covered;
  }
  return total;
}

bool is_antichain(const std::vector<Tile>& tiles) {
  std::set<Tile> set(tiles.begin(), tiles.end());
  if (set.size() != tiles.size()) return false;
  for (const auto& t : tiles)
    for (int level = t.level - 1; level >= 0; --level)
      if (set.contains(ancestor(t, level))) return false;
  return true;
}

bool covers(const std::vector<Tile>& tiles, const std::vector<Tile>& smin) {
  std::set<Tile> set(tiles.begin(), tiles.end());
  for (const auto& leaf : smin) {
    bool found = false;
    for (int level = leaf.level; level >= 0 && !found; --level) found = set.contains(ancestor(leaf, level));
    if (!found) return false;
  }
  return true;
}

}  // namespace icnfed::index
