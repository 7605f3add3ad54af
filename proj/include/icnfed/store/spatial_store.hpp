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
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "icnfed/geo/grid.hpp"
#include "icnfed/geo/name.hpp"
#include "icnfed/store/object.hpp"
#include "icnfed/store/query.hpp"

namespace icnfed::store {

/// In-memory spatial document store of one site.
///
/// Objects live in schema-less data-sets (did). Every write produces a new
/// versioned oName `{dbsid}/o/{did}/{internal_id}-v{version}`; only the
/// current version is resolvable. Deleting and re-inserting an id starts a
/// new incarnation whose internal id carries a `~n` suffix, so an oName is
/// never reused.
///
/// The local index is a hierarchical grid: each object is filed at the finest
/// level where its MBR touches at most 2x2 cells, and queries scan each level
/// column by column. Single-writer; not thread-safe.
class SpatialStore {
 public:
  explicit SpatialStore(std::string dbsid, Grid grid = Grid(3), Dialect dialect = Dialect::A);

  const std::string& dbsid() const noexcept { return dbsid_; }
  const Grid& grid() const noexcept { return grid_; }
  Dialect dialect() const noexcept { return dialect_; }

  /// Throws AlreadyExists if (did, id) is live, InvalidArgument on bad ids.
  Name insert(std::string_view did, std::string_view id, Geometry geometry, Properties properties);

  /// Bumps the version. Throws NotFound for an unknown (did, id).
  Name update(std::string_view did, std::string_view id, Geometry geometry, Properties properties);

  /// Throws NotFound for an unknown (did, id).
  void remove(std::string_view did, std::string_view id);

  /// Current oNames matching the statement, sorted by rendered name.
  std::vector<Name> query_onames(const QueryStatement& stmt) const;
  std::vector<SpatialObject> query_objects(const QueryStatement& stmt) const;

  /// Runs a statement in this store's dialect (the adapter path).
  std::vector<Name> execute(std::string_view dialect_statement) const;

  /// Throws NotFound unless `oname` names the current version of a live object.
  const SpatialObject& get(const Name& oname) const;
  const SpatialObject* find(const Name& oname) const noexcept;
  const SpatialObject* find(std::string_view did, std::string_view id) const noexcept;

  std::size_t size() const noexcept;
  std::size_t size(std::string_view did) const noexcept;
  std::vector<std::string> datasets() const;

  template <typename F>
  void for_each_object(F&& f) const {
    for (const auto& [did, ds] : datasets_)
      for (const auto& slot : ds.slots)
        if (slot.live) f(slot.object);
  }

  /// Incremented on every successful mutation.
  std::uint64_t revision() const noexcept { return revision_; }

  /// Every live object is filed under at least one cell it intersects, and no
  /// cell references a dead slot.
  bool index_consistent() const;

 private:
  using CellKey = std::pair<std::int64_t, std::int64_t>;
  using CellMap = std::map<CellKey, std::vector<std::uint32_t>>;

  struct Slot {
    SpatialObject object;
    std::string internal_id;
    TileRange cells;
    bool live = false;
  };

  struct DataSet {
    std::vector<Slot> slots;
    std::vector<std::uint32_t> free_slots;
    std::unordered_map<std::string, std::uint32_t> by_id;
    std::unordered_map<std::string, std::uint32_t> by_internal_id;
    std::unordered_map<std::string, std::uint32_t> incarnations;
    std::vector<CellMap> levels;
    std::size_t live = 0;
  };

  DataSet& dataset(std::string_view did);
  const DataSet* find_dataset(std::string_view did) const noexcept;
  std::pair<DataSet*, std::uint32_t> locate(std::string_view did, std::string_view id);
  TileRange placement(const Rect& box) const;
  void file(DataSet& ds, std::uint32_t slot);
  void unfile(DataSet& ds, std::uint32_t slot);
  std::vector<std::uint32_t> matching_slots(const DataSet& ds, const QueryStatement& stmt) const;

  std::string dbsid_;
  Grid grid_;
  Dialect dialect_;
  std::map<std::string, DataSet, std::less<>> datasets_;
  std::uint64_t revision_ = 0;
};

}  // namespace icnfed::store
