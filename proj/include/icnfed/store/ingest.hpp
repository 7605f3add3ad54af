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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "icnfed/store/object.hpp"
#include "icnfed/store/spatial_store.hpp"

namespace icnfed::store {

/// A dataset record before it is assigned to a site.
struct Feature {
  Geometry geometry;
  Properties properties;
};

struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// GeoJSON FeatureCollection with Point (or Polygon, reduced to its MBR)
/// features. Non-string property values are stored as their JSON text.
std::vector<Feature> read_geojson(std::istream& in, IngestReport* report = nullptr);

/// One feature per line: `lon,lat,key=value;key=value`. Blank lines and lines
/// starting with `#` are skipped; malformed lines are counted as rejected.
std::vector<Feature> read_csv(std::istream& in, IngestReport* report = nullptr);

/// Dispatches on the extension (.csv or anything else as GeoJSON).
std::vector<Feature> read_features(const std::string& path, IngestReport* report = nullptr);

void write_geojson(std::ostream& out, const std::vector<Feature>& features);
void write_csv(std::ostream& out, const std::vector<Feature>& features);

/// A site snapshot: the objects of a store as a FeatureCollection of the same
/// encoding to_geojson() emits, one feature per line.
void write_snapshot(std::ostream& out, const SpatialStore& store);

/// Rebuilds a store from a snapshot. Objects are re-inserted, so versions
/// restart at 1.
SpatialStore read_snapshot(std::istream& in, std::string dbsid, Grid grid = Grid(3),
                           Dialect dialect = Dialect::A);

}  // namespace icnfed::store
