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

#include "icnfed/store/spatial_store.hpp"

#include <algorithm>

#include "icnfed/common/error.hpp"

namespace icnfed::store {

namespace {

void check_token(std::string_view what, std::string_view value) {
  if (value.empty()) throw InvalidArgument(std::string(what) + " must not be empty");
  if (value.find('/') != std::string_view::npos || value.find('~') != std::string_view::npos) {
    throw InvalidArgument(std::string(what) + " must not contain '/' or '~': " + std::string(value));
  }
}

bool matches_filters(const SpatialObject& obj, const std::map<std::string, std::string>& filters) {
  for (const auto& [key, want] : filters) {
    auto it = obj.properties.find(key);
    if (it == obj.properties.end() || it->second != want) return false;
  }
  return true;
}

void sort_by_rendering(std::vector<Name>& names) {
  std::vector<std::pair<std::string, Name>> keyed;
  keyed.reserve(names.size());
  for (auto& n : names) keyed.emplace_back(n.to_string(), std::move(n));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  names.clear();
  for (auto& [_, n] : keyed) names.push_back(std::move(n));
}

}  // namespace

SpatialStore::SpatialStore(std::string dbsid, Grid grid, Dialect dialect)
    : dbsid_(std::move(dbsid)), grid_(grid), dialect_(dialect) {
  check_token("dbsid", dbsid_);
}

SpatialStore::DataSet& SpatialStore::dataset(std::string_view did) {
  auto it = datasets_.find(did);
  if (it == datasets_.end()) {
    it = datasets_.emplace(std::string(did), DataSet{}).first;
    it->second.levels.resize(static_cast<std::size_t>(grid_.levels()));
  }
  return it->second;
}

const SpatialStore::DataSet* SpatialStore::find_dataset(std::string_view did) const noexcept {
  auto it = datasets_.find(did);
  return it == datasets_.end() ? nullptr : &it->second;
}

TileRange SpatialStore::placement(const Rect& box) const {
  for (int level = grid_.finest_level(); level > 0; --level) {
    auto range = grid_.covering_range(box, level);
    if (range.width() <= 2 && range.height() <= 2) return range;
  }
  return grid_.covering_range(box, 0);
}

void SpatialStore::file(DataSet& ds, std::uint32_t slot) {
  auto& s = ds.slots[slot];
  s.cells = placement(mbr(s.object.geometry));
  auto& cells = ds.levels[static_cast<std::size_t>(s.cells.level)];
  for (auto ix = s.cells.ix_lo; ix <= s.cells.ix_hi; ++ix)
    for (auto iy = s.cells.iy_lo; iy <= s.cells.iy_hi; ++iy) cells[{ix, iy}].push_back(slot);
}

void SpatialStore::unfile(DataSet& ds, std::uint32_t slot) {
  const auto& range = ds.slots[slot].cells;
  auto& cells = ds.levels[static_cast<std::size_t>(range.level)];
  for (auto ix = range.ix_lo; ix <= range.ix_hi; ++ix) {
    for (auto iy = range.iy_lo; iy <= range.iy_hi; ++iy) {
      auto it = cells.find({ix, iy});
      if (it == cells.end()) continue;
      std::erase(it->second, slot);
      if (it->second.empty()) cells.erase(it);
    }
  }
}

Name SpatialStore::insert(std::string_view did, std::string_view id, Geometry geometry,
                          Properties properties) {
  check_token("did", did);
  check_token("id", id);
  auto& ds = dataset(did);
  if (ds.by_id.contains(std::string(id))) {
    throw AlreadyExists("object " + std::string(did) + "/" + std::string(id) + " exists");
  }
  auto incarnation = ++ds.incarnations[std::string(id)];
  std::string internal_id(id);
  if (incarnation > 1) internal_id += "~" + std::to_string(incarnation);

  std::uint32_t slot;
  if (!ds.free_slots.empty()) {
    slot = ds.free_slots.back();
    ds.free_slots.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(ds.slots.size());
    ds.slots.emplace_back(Slot{SpatialObject{Name{}, {}, {}, geometry, {}, 1}, {}, {}, false});
  }
  auto& s = ds.slots[slot];
  s.object = SpatialObject{make_oname(dbsid_, did, internal_id, 1), std::string(did),
                           std::string(id), std::move(geometry), std::move(properties), 1};
  s.internal_id = internal_id;
  s.live = true;
  file(ds, slot);
  ds.by_id.emplace(std::string(id), slot);
  ds.by_internal_id.emplace(std::move(internal_id), slot);
  ++ds.live;
  ++revision_;
  return s.object.oname;
}

std::pair<SpatialStore::DataSet*, std::uint32_t> SpatialStore::locate(std::string_view did,
                                                                     std::string_view id) {
  auto ds_it = datasets_.find(did);
  if (ds_it != datasets_.end()) {
    auto it = ds_it->second.by_id.find(std::string(id));
    if (it != ds_it->second.by_id.end()) return {&ds_it->second, it->second};
  }
  throw NotFound("no object " + std::string(did) + "/" + std::string(id));
}

Name SpatialStore::update(std::string_view did, std::string_view id, Geometry geometry,
                          Properties properties) {
  auto [ds, slot] = locate(did, id);
  unfile(*ds, slot);
  auto& s = ds->slots[slot];
  s.object.version += 1;
  s.object.oname = make_oname(dbsid_, did, s.internal_id, s.object.version);
  s.object.geometry = std::move(geometry);
  s.object.properties = std::move(properties);
  file(*ds, slot);
  ++revision_;
  return s.object.oname;
}

void SpatialStore::remove(std::string_view did, std::string_view id) {
  auto [ds, slot] = locate(did, id);
  unfile(*ds, slot);
  auto& s = ds->slots[slot];
  ds->by_internal_id.erase(s.internal_id);
  ds->by_id.erase(s.object.id);
  s.live = false;
  s.object.properties.clear();
  ds->free_slots.push_back(slot);
  --ds->live;
  ++revision_;
}

std::vector<std::uint32_t> SpatialStore::matching_slots(const DataSet& ds,
                                                        const QueryStatement& stmt) const {
  std::vector<std::uint32_t> candidates;
  for (int level = 0; level < grid_.levels(); ++level) {
    const auto& cells = ds.levels[static_cast<std::size_t>(level)];
    if (cells.empty()) continue;
    auto range = grid_.covering_range(stmt.area, level);
    if (static_cast<std::size_t>(range.width()) <= cells.size()) {
      for (auto ix = range.ix_lo; ix <= range.ix_hi; ++ix) {
        for (auto it = cells.lower_bound({ix, range.iy_lo});
             it != cells.end() && it->first.first == ix && it->first.second <= range.iy_hi; ++it) {
          candidates.insert(candidates.end(), it->second.begin(), it->second.end());
        }
      }
    } else {
      for (const auto& [key, slots] : cells) {
        if (key.first < range.ix_lo || key.first > range.ix_hi || key.second < range.iy_lo ||
            key.second > range.iy_hi) {
          continue;
        }
        candidates.insert(candidates.end(), slots.begin(), slots.end());
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates, [&](std::uint32_t slot) {
    const auto& obj = ds.slots[slot].object;
    return !mbr(obj.geometry).intersects(stmt.area) || !matches_filters(obj, stmt.filters);
  });
  return candidates;
}

std::vector<Name> SpatialStore::query_onames(const QueryStatement& stmt) const {
  std::vector<Name> out;
  const auto* ds = find_dataset(stmt.did);
  if (!ds) return out;
  for (auto slot : matching_slots(*ds, stmt)) out.push_back(ds->slots[slot].object.oname);
  sort_by_rendering(out);
  return out;
}

std::vector<SpatialObject> SpatialStore::query_objects(const QueryStatement& stmt) const {
  std::vector<SpatialObject> out;
  const auto* ds = find_dataset(stmt.did);
  if (!ds) return out;
  for (auto slot : matching_slots(*ds, stmt)) out.push_back(ds->slots[slot].object);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.oname.to_string() < b.oname.to_string();
  });
  return out;
}

std::vector<Name> SpatialStore::execute(std::string_view dialect_statement) const {
  return query_onames(parse_dialect_statement(dialect_statement, dialect_));
}

const SpatialObject* SpatialStore::find(const Name& oname) const noexcept {
  ONameParts parts;
  try {
    parts = parse_oname(oname);
  } catch (const ParseError&) {
    return nullptr;
  }
  if (parts.dbsid != dbsid_) return nullptr;
  const auto* ds = find_dataset(parts.did);
  if (!ds) return nullptr;
  auto it = ds->by_internal_id.find(parts.internal_id);
  if (it == ds->by_internal_id.end()) return nullptr;
  const auto& obj = ds->slots[it->second].object;
  return obj.version == parts.version ? &obj : nullptr;
}

const SpatialObject* SpatialStore::find(std::string_view did, std::string_view id) const noexcept {
  const auto* ds = find_dataset(did);
  if (!ds) return nullptr;
  auto it = ds->by_id.find(std::string(id));
  return it == ds->by_id.end() ? nullptr : &ds->slots[it->second].object;
}

const SpatialObject& SpatialStore::get(const Name& oname) const {
  const auto* obj = find(oname);
  if (!obj) throw NotFound("no current object " + oname.to_string());
  return *obj;
}

std::size_t SpatialStore::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [_, ds] : datasets_) n += ds.live;
  return n;
}

std::size_t SpatialStore::size(std::string_view did) const noexcept {
  const auto* ds = find_dataset(did);
  return ds ? ds->live : 0;
}

std::vector<std::string> SpatialStore::datasets() const {
  std::vector<std::string> out;
  for (const auto& [did, ds] : datasets_)
    if (ds.live) out.push_back(did);
  return out;
}

bool SpatialStore::index_consistent() const {
  for (const auto& [did, ds] : datasets_) {
    std::vector<bool> reached(ds.slots.size(), false);
    for (int level = 0; level < grid_.levels(); ++level) {
      for (const auto& [key, slots] : ds.levels[static_cast<std::size_t>(level)]) {
        auto cell = extent(Tile{level, key.first, key.second});
        for (auto slot : slots) {
          if (slot >= ds.slots.size() || !ds.slots[slot].live) return false;
          if (cell.intersects(mbr(ds.slots[slot].object.geometry))) reached[slot] = true;
        }
      }
    }
    for (std::size_t i = 0; i < ds.slots.size(); ++i)
      if (ds.slots[i].live && !reached[i]) return false;
  }
  return true;
}

}  // namespace icnfed::store
