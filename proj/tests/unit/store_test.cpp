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

#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "icnfed/common/error.hpp"
#include "icnfed/store/ingest.hpp"
#include "icnfed/store/query.hpp"
#include "icnfed/store/spatial_store.hpp"

namespace icnfed::store {
namespace {

QueryStatement box(std::string did, double x0, double y0, double x1, double y1,
                   std::map<std::string, std::string> filters = {}) {
  return QueryStatement{std::move(did), Rect(Point(x0, y0), Point(x1, y1)), std::move(filters)};
}

TEST(SpatialStoreTest, InsertNamesFirstVersion) {
  SpatialStore store("dbs#2");
  auto oname = store.insert("POI", "17", Point(12.49, 41.89), {{"type", "monument"}});
  EXPECT_EQ(oname.to_string(), "dbs#2/o/POI/17-v1");
  EXPECT_EQ(store.get(oname).properties.at("type"), "monument");
}

TEST(SpatialStoreTest, QueryExampleFindsPoint) {
  SpatialStore store("dbs#2");
  auto oname = store.insert("POI", "17", Point(12.49, 41.89), {{"type", "monument"}});
  auto hits = store.query_onames(box("POI", 12.4, 41.8, 12.6, 42.0));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0], oname);
  EXPECT_TRUE(store.query_onames(box("POI", 12.4, 41.8, 12.6, 42.0, {{"type", "hotel"}})).empty());
  EXPECT_TRUE(store.query_onames(box("roads", 12.4, 41.8, 12.6, 42.0)).empty());
}

TEST(SpatialStoreTest, UpdateBumpsVersionAndRetiresOldName) {
  SpatialStore store("dbs#2");
  auto v1 = store.insert("POI", "17", Point(12.49, 41.89), {});
  auto v2 = store.update("POI", "17", Point(12.5, 41.9), {{"k", "v"}});
  EXPECT_EQ(v2.to_string(), "dbs#2/o/POI/17-v2");
  EXPECT_THROW(store.get(v1), NotFound);
  EXPECT_EQ(store.get(v2).version, 2u);
  EXPECT_THROW(store.update("POI", "404", Point(0, 0), {}), NotFound);
  EXPECT_THROW(store.remove("nope", "17"), NotFound);
}

TEST(SpatialStoreTest, ReinsertAfterDeleteGetsFreshName) {
  SpatialStore store("s");
  auto first = store.insert("d", "a", Point(1, 1), {});
  store.remove("d", "a");
  EXPECT_THROW(store.get(first), NotFound);
  auto second = store.insert("d", "a", Point(1, 1), {});
  EXPECT_NE(first, second);
  EXPECT_EQ(second.to_string(), "s/o/d/a~2-v1");
  EXPECT_EQ(store.find("d", "a")->oname, second);
}

TEST(SpatialStoreTest, RejectsDuplicatesAndBadIds) {
  SpatialStore store("s");
  store.insert("d", "a", Point(1, 1), {});
  EXPECT_THROW(store.insert("d", "a", Point(2, 2), {}), AlreadyExists);
  EXPECT_THROW(store.insert("d", "a/b", Point(2, 2), {}), InvalidArgument);
  EXPECT_THROW(store.insert("", "x", Point(2, 2), {}), InvalidArgument);
  EXPECT_THROW(store.insert("d", "x~2", Point(2, 2), {}), InvalidArgument);
  EXPECT_THROW(SpatialStore("a/b"), InvalidArgument);
}

TEST(SpatialStoreTest, RectObjectsSpanningManyTiles) {
  SpatialStore store("s");
  store.insert("parks", "big", Rect(Point(5, 45), Point(8.5, 47.2)), {});
  store.insert("parks", "small", Rect(Point(5.01, 45.01), Point(5.02, 45.02)), {});
  EXPECT_EQ(store.query_onames(box("parks", 8.4, 47.1, 8.45, 47.15)).size(), 1u);
  EXPECT_EQ(store.query_onames(box("parks", 8.5, 47.2, 9, 48)).size(), 1u);  // touching corner
  EXPECT_EQ(store.query_onames(box("parks", 5.015, 45.015, 5.016, 45.016)).size(), 2u);
  EXPECT_TRUE(store.index_consistent());
}

TEST(SpatialStoreTest, ResultsAreSortedByRenderedName) {
  SpatialStore store("s");
  for (int i : {10, 2, 1, 33, 4}) store.insert("d", std::to_string(i), Point(1, 1), {});
  auto hits = store.query_onames(box("d", 0, 0, 2, 2));
  ASSERT_EQ(hits.size(), 5u);
  for (std::size_t i = 1; i < hits.size(); ++i)
    EXPECT_LT(hits[i - 1].to_string(), hits[i].to_string());
  EXPECT_EQ(hits[0].to_string(), "s/o/d/1-v1");
  EXPECT_EQ(hits[1].to_string(), "s/o/d/10-v1");
}

struct Shadow {
  Geometry geometry;
  Properties properties;
  std::uint32_t version;
};

// Random operation sequences checked against a linear scan over a plain map.
TEST(SpatialStoreTest, MatchesLinearScanOracle) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> lon(9.0, 11.0), lat(44.0, 46.0), size(0.0, 0.4);
  const std::vector<std::string> types = {"a", "b", "c"};
  auto random_geometry = [&]() -> Geometry {
    double x = lon(rng), y = lat(rng);
    if (rng() % 3 == 0) x = std::round(x * 100) / 100;
    if (rng() % 2) return Point(x, y);
    double s = rng() % 4 == 0 ? size(rng) * 5 : size(rng) * 0.1;
    return Rect(Point(x, y), Point(x + s, y + s * 0.7));
  };

  SpatialStore store("s");
  std::map<std::pair<std::string, std::string>, Shadow> shadow;
  std::map<std::pair<std::string, std::string>, int> incarnations;
  std::uint64_t mutations = 0;

  for (int step = 0; step < 4000; ++step) {
    std::string did = rng() % 4 == 0 ? "d2" : "d1";
    std::string id = std::to_string(rng() % 300);
    auto key = std::make_pair(did, id);
    auto op = rng() % 10;
    if (op < 5) {
      Properties props{{"type", types[rng() % types.size()]}};
      auto g = random_geometry();
      if (shadow.contains(key)) {
        EXPECT_THROW(store.insert(did, id, g, props), AlreadyExists);
      } else {
        store.insert(did, id, g, props);
        shadow.insert_or_assign(key, Shadow{g, props, 1});
        ++incarnations[key];
        ++mutations;
      }
    } else if (op < 8) {
      if (!shadow.contains(key)) continue;
      auto g = random_geometry();
      Properties props{{"type", types[rng() % types.size()]}};
      auto before = store.find(did, id)->oname;
      auto after = store.update(did, id, g, props);
      auto& sh = shadow.at(key);
      EXPECT_EQ(parse_oname(after).version, sh.version + 1);
      EXPECT_THROW(store.get(before), NotFound);
      sh = Shadow{g, props, sh.version + 1};
      ++mutations;
    } else {
      if (!shadow.contains(key)) {
        EXPECT_THROW(store.remove(did, id), NotFound);
        continue;
      }
      store.remove(did, id);
      shadow.erase(key);
      ++mutations;
    }
    ASSERT_EQ(store.revision(), mutations);

    if (step % 50 == 0) {
      ASSERT_TRUE(store.index_consistent());
      ASSERT_EQ(store.size(), shadow.size());
      for (int q = 0; q < 20; ++q) {
        double x = lon(rng), y = lat(rng);
        if (q % 4 == 0) x = std::round(x * 10) / 10;
        auto s = size(rng);
        auto stmt = box(q % 3 == 0 ? "d2" : "d1", x, y, x + s, y + s);
        if (q % 2) stmt.filters["type"] = types[rng() % types.size()];
        std::vector<std::string> expected;
        for (const auto& [k, sh] : shadow) {
          if (k.first != stmt.did || !mbr(sh.geometry).intersects(stmt.area)) continue;
          if (!stmt.filters.empty() && sh.properties.at("type") != stmt.filters.at("type")) continue;
          std::string internal = k.second;
          if (incarnations[k] > 1) internal += "~" + std::to_string(incarnations[k]);
          expected.push_back("s/o/" + k.first + "/" + internal + "-v" + std::to_string(sh.version));
        }
        std::sort(expected.begin(), expected.end());
        std::vector<std::string> got;
        for (const auto& n : store.query_onames(stmt)) got.push_back(n.to_string());
        ASSERT_EQ(got, expected) << serialize(stmt);
      }
    }
  }
}

TEST(QueryStatementTest, CanonicalEncoding) {
  auto stmt = box("POI", 12.4, 41.8, 12.6, 42, {{"type", "hotel"}});
  EXPECT_EQ(serialize(stmt),
            R"({"area":[12.4,41.8,12.6,42.0],"did":"POI","filters":{"type":"hotel"}})");
  EXPECT_EQ(parse_statement(serialize(stmt)), stmt);
  EXPECT_THROW(parse_statement(R"({"area":[1,2,3],"did":"x","filters":{}})"), ParseError);
  EXPECT_THROW(parse_statement(R"({"area":[3,2,1,4],"did":"x","filters":{}})"), ParseError);
  EXPECT_THROW(parse_statement("not json"), ParseError);
}

TEST(QueryStatementTest, DialectsDifferButRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50, 50);
  const std::vector<std::string> odd = {"`", "\"", "\\", " ", "é", "{", "}", "a"};
  for (int trial = 0; trial < 300; ++trial) {
    double x = u(rng), y = u(rng);
    QueryStatement stmt{trial % 7 == 0 ? "P`OI" : "POI", Rect(Point(x, y), Point(x + 1.5, y + 0.25)),
                        {}};
    for (int f = 0; f < static_cast<int>(rng() % 4); ++f) {
      std::string k = "k" + std::to_string(rng() % 5), v;
      for (int c = 0; c < 4; ++c) v += odd[rng() % odd.size()];
      stmt.filters[k] = v;
    }
    auto a = translate(stmt, Dialect::A);
    auto b = translate(stmt, Dialect::B);
    EXPECT_NE(a, b);
    EXPECT_EQ(parse_dialect_statement(a, Dialect::A), stmt) << a;
    EXPECT_EQ(parse_dialect_statement(b, Dialect::B), stmt) << b;
  }
}

TEST(QueryStatementTest, DialectExamples) {
  auto stmt = box("POI", 1, 2, 3, 4.5, {{"a", "x"}, {"b", "y"}});
  EXPECT_EQ(translate(stmt, Dialect::B),
            "SELECT oname FROM `POI` WHERE BOX(1, 2, 3, 4.5) AND `b` = \"y\" AND `a` = \"x\"");
  EXPECT_EQ(translate(stmt, Dialect::A),
            R"({"filter":{"$and":[{"geometry":{"$geoIntersects":{"$box":[[1.0,2.0],[3.0,4.5]]}}},)"
            R"({"properties.a":{"$eq":"x"}},{"properties.b":{"$eq":"y"}}]},"find":"POI"})");
  EXPECT_THROW(parse_dialect_statement("SELECT * FROM x", Dialect::B), ParseError);
  EXPECT_THROW(parse_dialect_statement("{}", Dialect::A), ParseError);
}

TEST(QueryStatementTest, StoresExecuteTheirOwnDialect) {
  SpatialStore a("a", Grid(3), Dialect::A), b("b", Grid(3), Dialect::B);
  for (auto* s : {&a, &b}) s->insert("POI", "1", Point(5, 5), {{"t", "x"}});
  auto stmt = box("POI", 4, 4, 6, 6, {{"t", "x"}});
  EXPECT_EQ(a.execute(translate(stmt, Dialect::A)).size(), 1u);
  EXPECT_EQ(b.execute(translate(stmt, Dialect::B)).size(), 1u);
  EXPECT_THROW(a.execute(translate(stmt, Dialect::B)), ParseError);
}

TEST(ObjectTest, GeoJsonRoundTrip) {
  SpatialStore store("dbs#1");
  store.insert("POI", "7", Point(2.35, 48.85), {{"name", "x \"y\""}});
  store.insert("area", "9", Rect(Point(1, 2), Point(3, 4)), {});
  store.for_each_object([](const SpatialObject& obj) {
    auto text = to_geojson(obj);
    EXPECT_EQ(object_from_geojson(text), obj);
    EXPECT_EQ(to_geojson(object_from_geojson(text)), text);
  });
}

TEST(ONameTest, ParseAndMake) {
  auto n = make_oname("dbs#2", "POI", "17~3", 12);
  EXPECT_EQ(n.to_string(), "dbs#2/o/POI/17~3-v12");
  auto parts = parse_oname(n);
  EXPECT_EQ(parts.dbsid, "dbs#2");
  EXPECT_EQ(parts.did, "POI");
  EXPECT_EQ(parts.internal_id, "17~3");
  EXPECT_EQ(parts.version, 12u);
  EXPECT_THROW(parse_oname(Name::parse("dbs#2/q/POI/17-v1")), ParseError);
  EXPECT_THROW(parse_oname(Name::parse("dbs#2/o/POI/17")), ParseError);
  EXPECT_THROW(parse_oname(Name::parse("dbs#2/o/POI/17-vx")), ParseError);
}

TEST(IngestTest, CsvCountsRejects) {
  std::istringstream in("# comment\n1.5,2.5,type=a;name=b\nbad,line\n200,1\n3,4\n\n");
  IngestReport report;
  auto features = read_csv(in, &report);
  EXPECT_EQ(report.accepted, 2u);
  EXPECT_EQ(report.rejected, 2u);
  ASSERT_EQ(features.size(), 2u);
  EXPECT_EQ(features[0].properties.at("name"), "b");
}

TEST(IngestTest, GeoJsonRoundTripAndSnapshot) {
  std::vector<Feature> features = {{Point(1, 2), {{"type", "a"}}},
                                   {Rect(Point(1, 2), Point(3, 4)), {{"n", "1"}}}};
  std::stringstream buf;
  write_geojson(buf, features);
  IngestReport report;
  auto back = read_geojson(buf, &report);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(report.rejected, 0u);
  EXPECT_EQ(back[1].properties, features[1].properties);
  EXPECT_EQ(mbr(back[1].geometry), mbr(features[1].geometry));

  SpatialStore store("s");
  store.insert("d", "1", Point(1, 2), {{"type", "a"}});
  store.insert("d", "2", Rect(Point(1, 2), Point(3, 4)), {});
  std::stringstream snap;
  write_snapshot(snap, store);
  auto copy = read_snapshot(snap, "s");
  EXPECT_EQ(copy.size(), 2u);
  std::stringstream snap2;
  write_snapshot(snap2, copy);
  EXPECT_EQ(snap.str(), snap2.str());
}

}  // namespace
}  // namespace icnfed::store
