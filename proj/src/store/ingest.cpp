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

#include "icnfed/store/ingest.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "icnfed/common/error.hpp"

namespace icnfed::store {

using nlohmann::json;

namespace {

Geometry parse_geometry(const json& g) {
  const auto& type = g.at("type").get_ref<const std::string&>();
  const auto& c = g.at("coordinates");
  if (type == "Point") return Point(c.at(0).get<double>(), c.at(1).get<double>());
  if (type == "Polygon") {
    double x0 = 1e9, y0 = 1e9, x1 = -1e9, y1 = -1e9;
    for (const auto& p : c.at(0)) {
      x0 = std::min(x0, p.at(0).get<double>());
      y0 = std::min(y0, p.at(1).get<double>());
      x1 = std::max(x1, p.at(0).get<double>());
      y1 = std::max(y1, p.at(1).get<double>());
    }
    return Rect(Point(x0, y0), Point(x1, y1));
  }
  throw ParseError("unsupported geometry " + type);
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<Feature> read_geojson(std::istream& in, IngestReport* report) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad GeoJSON: ") + e.what());
  }
  IngestReport local;
  std::vector<Feature> out;
  if (!doc.contains("features")) throw ParseError("GeoJSON lacks a features array");
  for (const auto& f : doc.at("features")) {
    try {
      Feature feature{parse_geometry(f.at("geometry")), {}};
      if (f.contains("properties") && f.at("properties").is_object()) {
        for (const auto& [k, v] : f.at("properties").items()) {
          feature.properties[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
      }
      out.push_back(std::move(feature));
      ++local.accepted;
    } catch (const std::exception&) {
      ++local.rejected;
    }
  }
  if (report) *report = local;
  return out;
}

std::vector<Feature> read_csv(std::istream& in, IngestReport* report) {
  IngestReport local;
  std::vector<Feature> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string_view view(line);
    auto c1 = view.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    double lon = 0, lat = 0;
    if (c1 == std::string_view::npos || !parse_double(view.substr(0, c1), lon) ||
        !parse_double(view.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos
                                                                        : c2 - c1 - 1),
                      lat)) {
      ++local.rejected;
      continue;
    }
    try {
      Feature feature{Point(lon, lat), {}};
      if (c2 != std::string_view::npos) {
        auto rest = view.substr(c2 + 1);
        while (!rest.empty()) {
          auto semi = rest.find(';');
          auto kv = rest.substr(0, semi);
          auto eq = kv.find('=');
          if (eq == std::string_view::npos || eq == 0) throw ParseError("bad property");
          feature.properties[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
          if (semi == std::string_view::npos) break;
          rest = rest.substr(semi + 1);
        }
      }
      out.push_back(std::move(feature));
      ++local.accepted;
    } catch (const Error&) {
      ++local.rejected;
    }
  }
  if (report) *report = local;
  return out;
}

std::vector<Feature> read_features(const std::string& path, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open " + path);
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".csv") ? read_csv(in, report) : read_geojson(in, report);
}

void write_geojson(std::ostream& out, const std::vector<Feature>& features) {
  out << "{\"type\":\"FeatureCollection\",\"features\":[\n";
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    json props = json::object();
    for (const auto& [k, v] : f.properties) props[k] = v;
    json geometry;
    if (const auto* p = std::get_if<Point>(&f.geometry)) {
      geometry = {{"type", "Point"}, {"coordinates", {p->lon(), p->lat()}}};
    } else {
      const auto& r = std::get<Rect>(f.geometry);
      geometry = {{"type", "Polygon"},
                  {"coordinates",
                   {{{r.min().lon(), r.min().lat()},
                     {r.max().lon(), r.min().lat()},
                     {r.max().lon(), r.max().lat()},
                     {r.min().lon(), r.max().lat()},
                     {r.min().lon(), r.min().lat()}}}}};
    }
    json feature{{"type", "Feature"}, {"geometry", geometry}, {"properties", props}};
    out << feature.dump() << (i + 1 < features.size() ? ",\n" : "\n");
  }
  out << "]}\n";
}

void write_csv(std::ostream& out, const std::vector<Feature>& features) {
  for (const auto& f : features) {
    auto c = mbr(f.geometry).min();
    out << format_double(c.lon()) << ',' << format_double(c.lat()) << ',';
    bool first = true;
    for (const auto& [k, v] : f.properties) {
      if (!first) out << ';';
      out << k << '=' << v;
      first = false;
    }
    out << '\n';
  }
}

void write_snapshot(std::ostream& out, const SpatialStore& store) {
  std::vector<std::string> lines;
  store.for_each_object([&](const SpatialObject& obj) { lines.push_back(to_geojson(obj)); });
  std::sort(lines.begin(), lines.end());
  out << "{\"type\":\"FeatureCollection\",\"dbsid\":" << json(store.dbsid()).dump()
      << ",\"features\":[\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out << lines[i] << (i + 1 < lines.size() ? ",\n" : "\n");
  }
  out << "]}\n";
}

SpatialStore read_snapshot(std::istream& in, std::string dbsid, Grid grid, Dialect dialect) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad snapshot: ") + e.what());
  }
  SpatialStore store(std::move(dbsid), grid, dialect);
  for (const auto& f : doc.at("features")) {
    auto obj = object_from_geojson(f.dump());
    store.insert(obj.did, obj.id, obj.geometry, obj.properties);
  }
  return store;
}

}  // namespace icnfed::store
