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

#include <map>
#include <string>
#include <string_view>

#include "icnfed/geo/grid.hpp"

namespace icnfed::store {

/// Neutral federated query: a spatial range over one data-set plus
/// equality filters on properties.
struct QueryStatement {
  std::string did;
  Rect area;
  std::map<std::string, std::string> filters;

  friend bool operator==(const QueryStatement&, const QueryStatement&) = default;
};

/// Canonical encoding: compact JSON with sorted keys,
///   {"area":[min_lon,min_lat,max_lon,max_lat],"did":"...","filters":{...}}
/// Doubles use the shortest representation that round-trips.
std::string serialize(const QueryStatement& stmt);
QueryStatement parse_statement(std::string_view text);

/// Statement dialects of the two document-store flavours run by sites.
enum class Dialect { A, B };

std::string_view to_string(Dialect d);
Dialect parse_dialect(std::string_view text);

/// A: JSON filter document, e.g.
///   {"filter":{"$and":[{"geometry":{"$geoIntersects":{"$box":[[x0,y0],[x1,y1]]}}},
///                     {"properties.type":{"$eq":"hotel"}}]},"find":"POI"}
/// B: query text with filters in reverse key order, e.g.
///   SELECT oname FROM `POI` WHERE BOX(x0, y0, x1, y1) AND `type` = "hotel"
std::string translate(const QueryStatement& stmt, Dialect dialect);
QueryStatement parse_dialect_statement(std::string_view text, Dialect dialect);

}  // namespace icnfed::store
