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

#include "icnfed/index/global_index.hpp"

#include <charconv>

#include "icnfed/common/error.hpp"

namespace icnfed::index {

namespace {

void put_u32(icn::Bytes& out, std::uint64_t v) {
  if (v > 0xFFFFFFFFULL) throw InvalidArgument("tile index exceeds 32 bits");
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | in[i];
  return v;
}

std::optional<std::uint64_t> parse_version(std::string_view comp) {
  constexpr std::string_view kPrefix = "version=";
  if (comp.substr(0, kPrefix.size()) != kPrefix) return std::nullopt;
  std::uint64_t v = 0;
  auto s = comp.substr(kPrefix.size());
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string tile_object_id(std::string_view dbsid, const Tile& t) {
  return std::string(dbsid) + ":" + to_string(t);
}

}  // namespace

icn::Bytes serialize_tiles(const std::vector<Tile>& tiles) {
  auto sorted = tiles;
  std::sort(sorted.begin(), sorted.end());
  icn::Bytes out;
  out.reserve(sorted.size() * kTileRecordSize);
  for (const auto& t : sorted) {
    out.push_back(static_cast<std::uint8_t>(t.level));
    put_u32(out, static_cast<std::uint64_t>(t.ix));
    put_u32(out, static_cast<std::uint64_t>(t.iy));
  }
  return out;
}

std::vector<Tile> deserialize_tiles(std::span<const std::uint8_t> payload, const Grid& grid) {
  if (payload.size() % kTileRecordSize != 0) throw ParseError("ragged tile list");
  std::vector<Tile> out;
  out.reserve(payload.size() / kTileRecordSize);
  for (std::size_t off = 0; off < payload.size(); off += kTileRecordSize) {
    Tile t{payload[off], get_u32(payload.subspan(off + 1)), get_u32(payload.subspan(off + 5))};
    if (!grid.valid(t)) throw ParseError("invalid tile " + to_string(t));
    out.push_back(t);
  }
  return out;
}

Name notify_prefix() { return Name{"index", "notify"}; }

Name vinterest_name(std::string_view dbsid, std::uint64_t version) {
  return Name{"index", "notify", std::string(dbsid), "version=" + std::to_string(version)};
}

Name index_data_prefix(std::string_view dbsid) { return Name{std::string(dbsid), "index", "data"}; }

Name gdata_name(std::string_view dbsid, std::uint64_t version) {
  return index_data_prefix(dbsid).appended("version=" + std::to_string(version));
}

std::optional<VersionAnnouncement> parse_vinterest(const Name& name) {
  if (name.size() != 4 || name[0] != "index" || name[1] != "notify") return std::nullopt;
  auto v = parse_version(name[3]);
  if (!v) return std::nullopt;
  return VersionAnnouncement{name[2], *v};
}

std::optional<VersionAnnouncement> parse_gname(const Name& name) {
  if (name.size() != 4 && name.size() != 5) return std::nullopt;
  if (name[1] != "index" || name[2] != "data") return std::nullopt;
  auto v = parse_version(name[3]);
  if (!v) return std::nullopt;
  return VersionAnnouncement{name[0], *v};
}

GlobalIndexStore::GlobalIndexStore(Grid grid) : store_("__global", grid) {}

bool GlobalIndexStore::merge(const Tessellation& t) {
  auto it = latest_.find(t.dbsid);
  if (it != latest_.end() && it->second.version >= t.version) return false;
  if (it != latest_.end()) {
    for (const auto& tile : it->second.tiles) store_.remove(kDid, tile_object_id(t.dbsid, tile));
  }
  for (const auto& tile : t.tiles) {
    store_.insert(kDid, tile_object_id(t.dbsid, tile), extent(tile), {{"dbsid", t.dbsid}});
  }
  latest_.insert_or_assign(t.dbsid, t);
  return true;
}

std::optional<std::uint64_t> GlobalIndexStore::version(std::string_view dbsid) const {
  auto it = latest_.find(dbsid);
  if (it == latest_.end()) return std::nullopt;
  return it->second.version;
}

const Tessellation* GlobalIndexStore::find(std::string_view dbsid) const {
  auto it = latest_.find(dbsid);
  return it == latest_.end() ? nullptr : &it->second;
}

std::vector<std::string> GlobalIndexStore::dbsids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : latest_) out.push_back(id);
  return out;
}

std::set<std::string> GlobalIndexStore::lookup(const Rect& area) const {
  std::set<std::string> out;
  for (const auto& obj : store_.query_objects(store::QueryStatement{std::string(kDid), area, {}})) {
    out.insert(obj.properties.at("dbsid"));
  }
  return out;
}

}  // namespace icnfed::index
