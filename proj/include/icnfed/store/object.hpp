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
#include <string>
#include <string_view>
#include <variant>

#include "icnfed/geo/grid.hpp"
#include "icnfed/geo/name.hpp"

namespace icnfed::store {

/// Objects are points (POIs) or rectangles standing in for the MBR of a
/// polygon.
using Geometry = std::variant<Point, Rect>;

Rect mbr(const Geometry& g);

using Properties = std::map<std::string, std::string>;

struct SpatialObject {
  Name oname;
  std::string did;
  std::string id;  // user-facing id; oname carries the internal id
  Geometry geometry;
  Properties properties;
  std::uint32_t version = 1;

  friend bool operator==(const SpatialObject&, const SpatialObject&) = default;
};

/// GeoJSON Feature encoding used for object payloads and snapshots. Output is
/// byte-deterministic (keys sorted).
std::string to_geojson(const SpatialObject& obj);
SpatialObject object_from_geojson(std::string_view text);

/// Parsed pieces of `{dbsid}/o/{did}/{internal_id}-v{version}`.
struct ONameParts {
  std::string dbsid;
  std::string did;
  std::string internal_id;
  std::uint32_t version = 0;
};

Name make_oname(std::string_view dbsid, std::string_view did, std::string_view internal_id,
                std::uint32_t version);

/// Throws ParseError if `name` does not follow the oName grammar.
ONameParts parse_oname(const Name& name);

}  // namespace icnfed::store
