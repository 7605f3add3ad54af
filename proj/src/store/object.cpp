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

#include "icnfed/store/object.hpp"

#include <charconv>

#include <nlohmann/json.hpp>

#include "icnfed/common/error.hpp"

namespace icnfed::store {

using nlohmann::json;

Rect mbr(const Geometry& g) {
  return std::visit(
      [](const auto& v) -> Rect {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Point>) {
          return Rect::of_point(v);
        } else {
          return v;
        }
      },
      g);
}

namespace {

json geometry_json(const Geometry& g) {
  if (const auto* p = std::get_if<Point>(&g)) {
    return json{{"type", "Point"}, {"coordinates", {p->lon(), p->lat()}}};
  }
  const auto& r = std::get<Rect>(g);
  json ring = json::array({{r.min().lon(), r.min().lat()},
                           {r.max().lon(), r.min().lat()},
                           {r.max().lon(), r.max().lat()},
                           {r.min().lon(), r.max().lat()},
                           {r.min().lon(), r.min().lat()}});
  return json{{"type", "Polygon"}, {"coordinates", json::array({ring})}};
}

Geometry geometry_from_json(const json& g) {
  const auto& type = g.at("type").get_ref<const std::string&>();
  const auto& coords = g.at("coordinates");
  if (type == "Point") {
    return Point(coords.at(0).get<double>(), coords.at(1).get<double>());
  }
  if (type == "Polygon") {
    // Any polygon is reduced to its bounding box.
    double min_lon = 1e9, min_lat = 1e9, max_lon = -1e9, max_lat = -1e9;
    for (const auto& pt : coords.at(0)) {
      double lon = pt.at(0).get<double>(), lat = pt.at(1).get<double>();
      min_lon = std::min(min_lon, lon);
      min_lat = std::min(min_lat, lat);
      max_lon = std::max(max_lon, lon);
      max_lat = std::max(max_lat, lat);
    }
    return Rect(Point(min_lon, min_lat), Point(max_lon, max_lat));
  }
  throw ParseError("unsupported geometry type " + type);
}

}  // namespace

std::string to_geojson(const SpatialObject& obj) {
  json props = json::object();
  for (const auto& [k, v] : obj.properties) props[k] = v;
  json feature{{"type", "Feature"},
               {"geometry", geometry_json(obj.geometry)},
               {"properties", std::move(props)},
               {"oName", obj.oname.to_string()},
               {"did", obj.did},
               {"id", obj.id},
               {"version", obj.version}};
  return feature.dump();
}

SpatialObject object_from_geojson(std::string_view text) {
  try {
    auto j = json::parse(text);
    SpatialObject obj{Name::parse(j.at("oName").get<std::string>()),
                      j.at("did").get<std::string>(),
                      j.at("id").get<std::string>(),
                      geometry_from_json(j.at("geometry")),
                      {},
                      j.at("version").get<std::uint32_t>()};
    for (const auto& [k, v] : j.at("properties").items()) obj.properties[k] = v.get<std::string>();
    return obj;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad object encoding: ") + e.what());
  }
}

Name make_oname(std::string_view dbsid, std::string_view did, std::string_view internal_id,
                std::uint32_t version) {
  return Name{std::string(dbsid), "o", std::string(did),
              std::string(internal_id) + "-v" + std::to_string(version)};
}

ONameParts parse_oname(const Name& name) {
  if (name.size() != 4 || name[1] != "o") throw ParseError("not an oName: " + name.to_string());
  const auto& last = name[3];
  auto pos = last.rfind("-v");
  if (pos == std::string::npos || pos == 0) throw ParseError("oName lacks version: " + name.to_string());
  ONameParts parts{name[0], name[2], last.substr(0, pos), 0};
  const char* begin = last.data() + pos + 2;
  const char* end = last.data() + last.size();
  auto [ptr, ec] = std::from_chars(begin, end, parts.version);
  if (ec != std::errc() || ptr != end || parts.version == 0) {
    throw ParseError("bad oName version: " + name.to_string());
  }
  return parts;
}

}  // namespace icnfed::store
