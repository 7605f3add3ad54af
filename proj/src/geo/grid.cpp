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

#include "icnfed/geo/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "icnfed/common/error.hpp"

namespace icnfed {

namespace {

constexpr std::array<double, kMaxLevels> kScale = {1, 10, 100, 1e3, 1e4, 1e5, 1e6};

std::int64_t lon_cells(int level) { return static_cast<std::int64_t>(360 * kScale[level]); }
std::int64_t lat_cells(int level) { return static_cast<std::int64_t>(180 * kScale[level]); }

// Lower edges are defined once here; every containment test goes through them
// so that floor() rounding can never disagree with the extent of a tile.
double lon_edge(std::int64_t ix, int level) {
  return static_cast<double>(ix) / kScale[level] - 180.0;
}
double lat_edge(std::int64_t iy, int level) {
  return static_cast<double>(iy) / kScale[level] - 90.0;
}

std::int64_t lon_index(double lon, int level) {
  auto n = lon_cells(level);
  auto ix = static_cast<std::int64_t>(std::floor((lon + 180.0) * kScale[level]));
  ix = std::clamp<std::int64_t>(ix, 0, n - 1);
  while (ix + 1 < n && lon_edge(ix + 1, level) <= lon) ++ix;
  while (ix > 0 && lon_edge(ix, level) > lon) --ix;
  return ix;
}

std::int64_t lat_index(double lat, int level) {
  auto n = lat_cells(level);
  auto iy = static_cast<std::int64_t>(std::floor((lat + 90.0) * kScale[level]));
  iy = std::clamp<std::int64_t>(iy, 0, n - 1);
  while (iy + 1 < n && lat_edge(iy + 1, level) <= lat) ++iy;
  while (iy > 0 && lat_edge(iy, level) > lat) --iy;
  return iy;
}

}  // namespace

Point::Point(double lon, double lat) : lon_(lon), lat_(lat) {
  if (!(lon >= -180.0 && lon < 180.0)) {
    throw InvalidArgument("longitude out of [-180, 180): " + std::to_string(lon));
  }
  if (!(lat >= -90.0 && lat <= 90.0)) {
    throw InvalidArgument("latitude out of [-90, 90]: " + std::to_string(lat));
  }
}

Rect::Rect(Point min, Point max) : min_(min), max_(max) {
  if (min.lon() > max.lon()) throw InvalidArgument("rect min.lon > max.lon (antimeridian crossing?)");
  if (min.lat() > max.lat()) throw InvalidArgument("rect min.lat > max.lat");
}

std::string to_string(const Tile& t) {
  std::ostringstream os;
  os << 'L' << t.level << ':' << t.ix << ':' << t.iy;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Tile& t) { return os << to_string(t); }

AreaUnits tile_area_units(int level) {
  if (level < 0 || level >= kMaxLevels) throw InvalidArgument("tile level out of range");
  AreaUnits units = 1;
  for (int l = level; l < kMaxLevels - 1; ++l) units *= kChildrenPerTile;
  return units;
}

double tile_area(const Tile& t) {
  double side = 1.0 / kScale.at(static_cast<std::size_t>(t.level));
  return side * side;
}

double area_units_to_deg2(AreaUnits units) {
  return static_cast<double>(units) / static_cast<double>(tile_area_units(0));
}

Rect extent(const Tile& t) {
  auto top = t.iy + 1 >= lat_cells(t.level) ? 90.0 : lat_edge(t.iy + 1, t.level);
  auto right = lon_edge(t.ix + 1, t.level);
  // The easternmost column ends at 180, which Point excludes; clamp just below.
  if (t.ix + 1 >= lon_cells(t.level)) right = std::nextafter(180.0, 0.0);
  return Rect(Point(lon_edge(t.ix, t.level), lat_edge(t.iy, t.level)), Point(right, top));
}

Tile parent(const Tile& t) {
  if (t.level <= 0) throw InvalidArgument("level-0 tile has no parent");
  return Tile{t.level - 1, t.ix / kBranching, t.iy / kBranching};
}

Tile ancestor(const Tile& t, int level) {
  if (level > t.level || level < 0) throw InvalidArgument("ancestor level out of range");
  Tile a = t;
  while (a.level > level) a = parent(a);
  return a;
}

bool is_ancestor_or_self(const Tile& anc, const Tile& t) {
  if (anc.level > t.level) return false;
  return ancestor(t, anc.level) == anc;
}

Grid::Grid(int levels) : levels_(levels) {
  if (levels < 1 || levels > kMaxLevels) throw InvalidArgument("grid levels out of range");
}

void Grid::check_level(int level) const {
  if (level < 0 || level >= levels_) {
    throw InvalidArgument("tile level " + std::to_string(level) + " outside [0, " +
                          std::to_string(levels_ - 1) + "]");
  }
}

bool Grid::valid(const Tile& t) const noexcept {
  return t.level >= 0 && t.level < levels_ && t.ix >= 0 && t.ix < lon_cells(t.level) &&
         t.iy >= 0 && t.iy < lat_cells(t.level);
}

Tile Grid::tile_of(const Point& p, int level) const {
  check_level(level);
  return Tile{level, lon_index(p.lon(), level), lat_index(p.lat(), level)};
}

TileRange Grid::covering_range(const Rect& r, int level) const {
  check_level(level);
  TileRange range{level, lon_index(r.min().lon(), level), lon_index(r.max().lon(), level),
                  lat_index(r.min().lat(), level), lat_index(r.max().lat(), level)};
  // A rect starting exactly on a cell edge also touches the closed extent of
  // the neighbour below that edge.
  if (range.ix_lo > 0 && lon_edge(range.ix_lo, level) == r.min().lon()) --range.ix_lo;
  if (range.iy_lo > 0 && lat_edge(range.iy_lo, level) == r.min().lat()) --range.iy_lo;
  return range;
}

std::vector<Tile> Grid::tiles_covering(const Rect& r, int level) const {
  auto range = covering_range(r, level);
  std::vector<Tile> out;
  out.reserve(static_cast<std::size_t>(range.count()));
  range.for_each([&](const Tile& t) { out.push_back(t); });
  return out;
}

std::vector<Tile> Grid::children(const Tile& t) const {
  if (!valid(t)) throw InvalidArgument("invalid tile " + to_string(t));
  if (t.level >= levels_ - 1) throw InvalidArgument("finest-level tile has no children");
  std::vector<Tile> out;
  out.reserve(kChildrenPerTile);
  for (int dx = 0; dx < kBranching; ++dx)
    for (int dy = 0; dy < kBranching; ++dy)
      out.push_back(Tile{t.level + 1, t.ix * kBranching + dx, t.iy * kBranching + dy});
  return out;
}

}  // namespace icnfed
