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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "icnfed/geo/grid.hpp"
#include "icnfed/icn/packet.hpp"
#include "icnfed/store/spatial_store.hpp"

namespace icnfed::index {

struct Tessellation {
  std::string dbsid;
  std::uint64_t version = 0;
  std::vector<Tile> tiles;  // sorted, non-overlapping
  friend bool operator==(const Tessellation&, const Tessellation&) = default;
};

/// Announcement payload: the sorted tiles as 9-byte records, u8 level then
/// big-endian u32 ix and u32 iy.
inline constexpr std::size_t kTileRecordSize = 9;
icn::Bytes serialize_tiles(const std::vector<Tile>& tiles);
/// Throws ParseError on a ragged length or a tile invalid for `grid`.
std::vector<Tile> deserialize_tiles(std::span<const std::uint8_t> payload, const Grid& grid);

/// Names used by index synchronisation.
Name vinterest_name(std::string_view dbsid, std::uint64_t version);
/// `{dbsid}/index/data/version={x}`; segments append `/s{n}`.
Name gdata_name(std::string_view dbsid, std::uint64_t version);
Name notify_prefix();
Name index_data_prefix(std::string_view dbsid);

struct VersionAnnouncement {
  std::string dbsid;
  std::uint64_t version = 0;
};
/// Parses `index/notify/{dbsid}/version={x}`.
std::optional<VersionAnnouncement> parse_vinterest(const Name& name);
/// Parses `{dbsid}/index/data/version={x}[/s{n}]`.
std::optional<VersionAnnouncement> parse_gname(const Name& name);

/// The merged global index G: the latest known tessellation of every site,
/// kept as square objects with a `dbsid` property in a spatial store.
class GlobalIndexStore {
 public:
  static constexpr std::string_view kDid = "__index";

  explicit GlobalIndexStore(Grid grid = Grid(3));

  /// Replaces the stored tessellation of t.dbsid iff t.version is newer.
  /// Returns whether it did.
  bool merge(const Tessellation& t);

  std::optional<std::uint64_t> version(std::string_view dbsid) const;
  const Tessellation* find(std::string_view dbsid) const;
  std::vector<std::string> dbsids() const;
  std::size_t tile_count() const noexcept { return store_.size(); }

  /// Sites owning at least one tile whose extent intersects `area`.
  std::set<std::string> lookup(const Rect& area) const;

 private:
  store::SpatialStore store_;
  std::map<std::string, Tessellation, std::less<>> latest_;
};

}  // namespace icnfed::index
