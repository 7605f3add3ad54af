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

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace icnfed {

/// Longitude/latitude in degrees. lon in [-180, 180), lat in [-90, 90].
class Point {
 public:
  Point(double lon, double lat);

  double lon() const noexcept { return lon_; }
  double lat() const noexcept { return lat_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  double lon_;
  double lat_;
};

/// Axis-aligned lon/lat box with closed edges. Rectangles crossing the
/// antimeridian are rejected (min.lon must not exceed max.lon).
class Rect {
 public:
  Rect(Point min, Point max);
  static Rect of_point(Point p) { return Rect(p, p); }

  const Point& min() const noexcept { return min_; }
  const Point& max() const noexcept { return max_; }

  bool intersects(const Rect& other) const noexcept {
    return min_.lon() <= other.max_.lon() && other.min_.lon() <= max_.lon() &&
           min_.lat() <= other.max_.lat() && other.min_.lat() <= max_.lat();
  }
  bool contains(const Point& p) const noexcept {
    return min_.lon() <= p.lon() && p.lon() <= max_.lon() && min_.lat() <= p.lat() &&
           p.lat() <= max_.lat();
  }

  friend bool operator==(const Rect&, const Rect&) = default;

 private:
  Point min_;
  Point max_;
};

/// One cell of the hierarchical grid. A level-n tile spans 10^-n degrees on
/// each axis; ix counts from lon -180 and iy from lat -90.
struct Tile {
  int level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend bool operator==(const Tile&, const Tile&) = default;
  friend std::strong_ordering operator<=>(const Tile&, const Tile&) = default;
};

std::ostream& operator<<(std::ostream& os, const Tile& t);

/// Renders as `L{level}:{ix}:{iy}`.
std::string to_string(const Tile& t);

struct TileHash {
  std::size_t operator()(const Tile& t) const noexcept {
    auto h = static_cast<std::uint64_t>(t.ix) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(t.iy) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(t.level) << 58;
    return static_cast<std::size_t>(h);
  }
};

/// Tiles per axis subdivision between adjacent levels; M = kBranching^2.
inline constexpr int kBranching = 10;
inline constexpr int kChildrenPerTile = kBranching * kBranching;

/// Deepest level supported by the exact integer area representation.
inline constexpr int kMaxLevels = 7;

/// Tile area in units of (1e-6 degree)^2; exact for every supported level.
using AreaUnits = std::int64_t;

AreaUnits tile_area_units(int level);
inline AreaUnits tile_area_units(const Tile& t) { return tile_area_units(t.level); }

/// Planar degree^2 area: (10^-level)^2.
double tile_area(const Tile& t);
double area_units_to_deg2(AreaUnits units);

/// Closed lon/lat extent of a tile.
Rect extent(const Tile& t);

/// Parent tile (floor-divide indices by 10). Throws on level 0.
Tile parent(const Tile& t);

/// Ancestor-or-self at `level` (level <= t.level).
Tile ancestor(const Tile& t, int level);

bool is_ancestor_or_self(const Tile& ancestor, const Tile& t);

/// Inclusive index rectangle of tiles at one level.
struct TileRange {
  int level = 0;
  std::int64_t ix_lo = 0, ix_hi = -1, iy_lo = 0, iy_hi = -1;

  std::int64_t width() const noexcept { return ix_hi - ix_lo + 1; }
  std::int64_t height() const noexcept { return iy_hi - iy_lo + 1; }
  std::int64_t count() const noexcept { return width() * height(); }

  template <typename F>
  void for_each(F&& f) const {
    for (auto ix = ix_lo; ix <= ix_hi; ++ix)
      for (auto iy = iy_lo; iy <= iy_hi; ++iy) f(Tile{level, ix, iy});
  }
};

/// The N-level grid with M = 100 children per tile.
class Grid {
 public:
  explicit Grid(int levels = 3);

  int levels() const noexcept { return levels_; }
  int finest_level() const noexcept { return levels_ - 1; }

  /// Half-open cells, closed at the global max edge (lat = 90).
  Tile tile_of(const Point& p, int level) const;

  /// Index range of the level tiles whose closed extent intersects r.
  TileRange covering_range(const Rect& r, int level) const;

  /// Tiles of `level` whose closed extent intersects r, ordered by (ix, iy).
  std::vector<Tile> tiles_covering(const Rect& r, int level) const;

  std::vector<Tile> children(const Tile& t) const;

  bool valid(const Tile& t) const noexcept;
  void check_level(int level) const;

 private:
  int levels_;
};

}  // namespace icnfed
