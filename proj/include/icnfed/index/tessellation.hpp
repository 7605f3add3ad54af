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
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "icnfed/geo/grid.hpp"
#include "icnfed/store/spatial_store.hpp"

namespace icnfed::index {

/// Finest-level tiles intersecting at least one object of `store`, sorted.
/// A point activates only the tile owning it (tile_of), even on a cell edge.
/// An empty `dids` means every data-set.
std::vector<Tile> compute_smin(const store::SpatialStore& store,
                               const std::set<std::string>& dids = {});

/// Tree of S_min tiles plus all their ancestors up to level 0, under an
/// implicit common root. Collapsing a node prunes its whole subtree and turns
/// it into a leaf.
class TileTree {
 public:
  /// `smin` must hold tiles of level levels-1; duplicates are ignored.
  TileTree(const std::vector<Tile>& smin, int levels);

  int levels() const noexcept { return levels_; }
  std::size_t leaf_count() const noexcept { return leaf_count_; }
  std::size_t root_count() const noexcept { return alive_at_level_[0]; }
  std::vector<Tile> leaves() const;

  /// Leaves left if every surviving level-j node were collapsed while leaves
  /// above level j stay as they are.
  std::size_t collapsed_leaf_count(int j) const;

  /// C_t: tile area minus the area of its S_min descendants-or-self.
  /// Throws NotFound for tiles outside the tree.
  AreaUnits cost(const Tile& t) const;

  /// Non-leaf surviving nodes of `level`, ordered by (cost, ix, iy).
  std::vector<Tile> candidates(int level) const;
  /// Throws NotFound for tiles outside the tree or already pruned.
  void collapse(const Tile& t);

 private:
  struct Node {
    Tile tile;
    std::int32_t parent = -1;
    std::vector<std::int32_t> children;
    std::int64_t smin_below = 0;
    bool alive = true;
    bool leaf = false;
  };

  std::int32_t node_of(const Tile& t) const;
  void prune_below(std::int32_t n);

  int levels_;
  std::vector<Node> nodes_;
  std::vector<std::unordered_map<Tile, std::int32_t, TileHash>> by_level_;
  std::vector<std::size_t> alive_at_level_;
  std::vector<std::size_t> leaves_at_level_;
  std::size_t leaf_count_ = 0;
};

/// The level i for which a new level-i tile is necessary: R_{i+1} > k and
/// R_i <= k, with R_j = collapsed_leaf_count(j). None when the leaves
/// already fit, or when even level 0 does not fit.
std::optional<int> next_level_needed(const TileTree& tree, std::size_t k);

/// Constrained greedy tessellation of `smin` into at most k tiles. If the
/// level-0 ancestors alone exceed k they are returned instead. Result sorted.
std::vector<Tile> tessellate(const std::vector<Tile>& smin, std::size_t k, int levels);

/// The distinct ancestors of `smin` at one level (an unconstrained uniform
/// grid of that resolution). Result sorted.
std::vector<Tile> uniform_tessellation(const std::vector<Tile>& smin, int level);

/// C_S: summed tile cost of `tiles` against `smin`.
AreaUnits tessellation_cost(const std::vector<Tile>& tiles, const std::vector<Tile>& smin);

/// No tile is an ancestor of another.
bool is_antichain(const std::vector<Tile>& tiles);
/// Every smin tile has an ancestor-or-self in `tiles`.
bool covers(const std::vector<Tile>& tiles, const std::vector<Tile>& smin);

}  // namespace icnfed::index
