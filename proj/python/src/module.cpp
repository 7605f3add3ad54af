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

#include <memory>
#include <optional>
#include <sstream>
#include <variant>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icnfed/common/error.hpp"
#include "icnfed/fed/federation.hpp"
#include "icnfed/harness/capacity.hpp"
#include "icnfed/harness/scenario.hpp"
#include "icnfed/index/tessellation.hpp"

namespace py = pybind11;
using namespace icnfed;

namespace {

py::dict object_dict(const store::SpatialObject& o) {
  py::dict d;
  d["oname"] = o.oname.to_string();
  d["did"] = o.did;
  d["id"] = o.id;
  d["version"] = o.version;
  if (const auto* p = std::get_if<Point>(&o.geometry)) d["geometry"] = *p;
  else d["geometry"] = std::get<Rect>(o.geometry);
  d["properties"] = o.properties;
  return d;
}

py::dict result_dict(const fed::FederatedResult& r) {
  py::list objects;
  for (const auto& o : r.objects) objects.append(object_dict(o));
  py::dict d;
  d["query_id"] = r.query_id;
  d["objects"] = objects;
  d["contacted"] = r.contacted;
  d["false_positives"] = r.false_positives;
  d["complete"] = r.complete;
  d["rejected"] = r.rejected;
  d["reject_reason"] = r.reject_reason;
  d["between_phase_misses"] = r.between_phase_misses;
  d["response_ms"] = to_ms(r.resolved - r.submitted);
  return d;
}

py::dict counters_dict(const fed::SiteCounters& c) {
  py::dict d;
  d["queries_submitted"] = c.queries_submitted;
  d["queries_rejected"] = c.queries_rejected;
  d["queries_resolved"] = c.queries_resolved;
  d["queries_incomplete"] = c.queries_incomplete;
  d["db_queries"] = c.db_queries;
  d["qinterests_sent"] = c.qinterests_sent;
  d["qinterests_served"] = c.qinterests_served;
  d["ointerests_sent"] = c.ointerests_sent;
  d["ointerests_served"] = c.ointerests_served;
  d["between_phase_misses"] = c.between_phase_misses;
  d["interest_timeouts"] = c.interest_timeouts;
  d["bad_signatures"] = c.bad_signatures;
  d["index_versions"] = c.index_versions;
  d["gdata_bytes_served"] = c.gdata_bytes_served;
  return d;
}

store::Geometry geometry(const py::object& g) {
  if (py::isinstance<Point>(g)) return g.cast<Point>();
  if (py::isinstance<Rect>(g)) return g.cast<Rect>();
  throw py::type_error("geometry must be a Point or a Rect");
}

store::QueryStatement statement(std::string did, const Rect& area, std::map<std::string, std::string> filters) {
  return store::QueryStatement{std::move(did), area, std::move(filters)};
}

// Owns a federation and resolves queries synchronously by running the loop.
class PyFederation {
 public:
  PyFederation(double latency_ms, double bandwidth, bool caching, std::uint64_t seed) {
    fed::FederationConfig c;
    c.access_link = sim::LinkParams{latency_ms, bandwidth};
    c.site_forwarder.caching = caching;
    c.provider_forwarder.caching = caching;
    c.seed = seed;
    fed_ = std::make_unique<fed::Federation>(c);
  }

  fed::Site& add_site(const std::string& dbsid, const std::string& dialect, std::size_t k, int levels,
                      bool flooding, bool strict, double sync_interval_ms) {
    fed::SiteConfig c;
    c.dbsid = dbsid;
    c.dialect = store::parse_dialect(dialect);
    c.k = k;
    c.grid_levels = levels;
    c.flooding = flooding;
    c.strict = strict;
    c.sync_interval = from_ms(sync_interval_ms);
    return fed_->add_site(c);
  }

  void run_for(double ms) { fed_->loop().run_until(fed_->loop().now() + from_ms(ms)); }

  py::dict query(const std::string& from, const std::string& did, const Rect& area,
                 std::map<std::string, std::string> filters, const std::string& user, double deadline_ms) {
    std::optional<fed::FederatedResult> out;
    fed_->site(from).submit_query(user, statement(did, area, std::move(filters)),
                                  [&](const fed::FederatedResult& r) { out = r; });
    auto& loop = fed_->loop();
    auto deadline = loop.now() + from_ms(deadline_ms);
    loop.run_while_not([&] { return out.has_value() || loop.now() > deadline; });
    if (!out) throw Error("query did not resolve before the deadline");
    return result_dict(*out);
  }

  fed::Federation& get() { return *fed_; }

 private:
  std::unique_ptr<fed::Federation> fed_;
};

py::dict metrics_dict(const harness::TrialMetrics& m) {
  py::dict d;
  d["submitted"] = m.submitted;
  d["resolved"] = m.resolved;
  d["timed_out"] = m.timed_out;
  d["rejected"] = m.rejected;
  d["mean_response_ms"] = m.mean_response_ms;
  d["ci95_ms"] = m.ci95_ms;
  d["false_positives"] = m.false_positives;
  d["between_phase_misses"] = m.between_phase_misses;
  d["gdata_bytes"] = m.gdata_bytes;
  d["announcement_bytes"] = m.announcement_bytes;
  d["tiles"] = m.tiles;
  d["stable"] = m.stable;
  py::list sites;
  for (const auto& s : m.sites) {
    py::dict sd;
    sd["dbsid"] = s.dbsid;
    sd["objects"] = s.objects;
    sd["tiles"] = s.tiles;
    sd["db_queries"] = s.db_queries;
    sd["query_ratio"] = s.query_ratio;
    sites.append(sd);
  }
  d["sites"] = sites;
  std::ostringstream q, s, l;
  harness::write_queries_csv(q, m);
  harness::write_summary_csv(s, m);
  harness::write_links_csv(l, m);
  d["queries_csv"] = q.str();
  d["summary_csv"] = s.str();
  d["links_csv"] = l.str();
  return d;
}

}  // namespace

PYBIND11_MODULE(_icnfed, m) {
  m.doc() = "Federated spatial databases over an information-centric network";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<NotFound>(m, "NotFound", error.ptr());
  py::register_exception<AlreadyExists>(m, "AlreadyExists", error.ptr());

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("lon"), py::arg("lat"))
      .def_property_readonly("lon", &Point::lon)
      .def_property_readonly("lat", &Point::lat)
      .def(py::self == py::self)
      .def("__repr__", [](const Point& p) {
        return "Point(" + py::repr(py::float_(p.lon())).cast<std::string>() + ", " +
               py::repr(py::float_(p.lat())).cast<std::string>() + ")";
      });

  py::class_<Rect>(m, "Rect")
      .def(py::init<Point, Point>(), py::arg("min"), py::arg("max"))
      .def(py::init([](double x0, double y0, double x1, double y1) { return Rect(Point(x0, y0), Point(x1, y1)); }),
           py::arg("min_lon"), py::arg("min_lat"), py::arg("max_lon"), py::arg("max_lat"))
      .def_property_readonly("min", &Rect::min)
      .def_property_readonly("max", &Rect::max)
      .def("intersects", &Rect::intersects)
      .def("contains", &Rect::contains)
      .def(py::self == py::self)
      .def("__repr__", [](const Rect& r) {
        std::ostringstream s;
        s << "Rect(" << r.min().lon() << ", " << r.min().lat() << ", " << r.max().lon() << ", " << r.max().lat()
          << ")";
        return s.str();
      });

  py::class_<Tile>(m, "Tile")
      .def(py::init([](int level, std::int64_t ix, std::int64_t iy) { return Tile{level, ix, iy}; }),
           py::arg("level"), py::arg("ix"), py::arg("iy"))
      .def_readonly("level", &Tile::level)
      .def_readonly("ix", &Tile::ix)
      .def_readonly("iy", &Tile::iy)
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__hash__", [](const Tile& t) { return TileHash{}(t); })
      .def("__repr__", [](const Tile& t) { return to_string(t); })
      .def_property_readonly("extent", [](const Tile& t) { return extent(t); });

  py::class_<Grid>(m, "Grid")
      .def(py::init<int>(), py::arg("levels") = 3)
      .def_property_readonly("levels", &Grid::levels)
      .def("tile_of", &Grid::tile_of, py::arg("point"), py::arg("level"))
      .def("tiles_covering", &Grid::tiles_covering, py::arg("rect"), py::arg("level"));

  py::class_<store::SpatialStore>(m, "SpatialStore")
      .def(py::init([](std::string dbsid, int levels, const std::string& dialect) {
             return store::SpatialStore(std::move(dbsid), Grid(levels), store::parse_dialect(dialect));
           }),
           py::arg("dbsid"), py::arg("levels") = 3, py::arg("dialect") = "A")
      .def_property_readonly("dbsid", &store::SpatialStore::dbsid)
      .def_property_readonly("revision", &store::SpatialStore::revision)
      .def(
          "insert",
          [](store::SpatialStore& s, const std::string& did, const std::string& id, const py::object& g,
             store::Properties props) { return s.insert(did, id, geometry(g), std::move(props)).to_string(); },
          py::arg("did"), py::arg("id"), py::arg("geometry"), py::arg("properties") = store::Properties{})
      .def(
          "update",
          [](store::SpatialStore& s, const std::string& did, const std::string& id, const py::object& g,
             store::Properties props) { return s.update(did, id, geometry(g), std::move(props)).to_string(); },
          py::arg("did"), py::arg("id"), py::arg("geometry"), py::arg("properties") = store::Properties{})
      .def("remove", &store::SpatialStore::remove, py::arg("did"), py::arg("id"))
      .def(
          "query",
          [](const store::SpatialStore& s, const std::string& did, const Rect& area,
             std::map<std::string, std::string> filters) {
            py::list out;
            for (const auto& o : s.query_objects(statement(did, area, std::move(filters)))) out.append(object_dict(o));
            return out;
          },
          py::arg("did"), py::arg("area"), py::arg("filters") = std::map<std::string, std::string>{})
      .def(
          "execute",
          [](const store::SpatialStore& s, const std::string& text) {
            std::vector<std::string> out;
            for (const auto& n : s.execute(text)) out.push_back(n.to_string());
            return out;
          },
          py::arg("statement"))
      .def(
          "get", [](const store::SpatialStore& s, const std::string& oname) {
            return object_dict(s.get(Name::parse(oname)));
          },
          py::arg("oname"))
      .def("__len__", [](const store::SpatialStore& s) { return s.size(); });

  m.def(
      "translate",
      [](const std::string& did, const Rect& area, std::map<std::string, std::string> filters,
         const std::string& dialect) {
        return store::translate(statement(did, area, std::move(filters)), store::parse_dialect(dialect));
      },
      py::arg("did"), py::arg("area"), py::arg("filters") = std::map<std::string, std::string>{},
      py::arg("dialect") = "A");

  m.def("compute_smin", &index::compute_smin, py::arg("store"), py::arg("dids") = std::set<std::string>{});
  m.def("tessellate", &index::tessellate, py::arg("smin"), py::arg("k"), py::arg("levels") = 3);
  m.def("uniform_tessellation", &index::uniform_tessellation, py::arg("smin"), py::arg("level"));
  m.def("tessellation_cost", &index::tessellation_cost, py::arg("tiles"), py::arg("smin"));
  m.def("is_antichain", &index::is_antichain, py::arg("tiles"));
  m.def("covers", &index::covers, py::arg("tiles"), py::arg("smin"));
  m.def(
      "serialize_tiles",
      [](const std::vector<Tile>& tiles) {
        auto b = index::serialize_tiles(tiles);
        return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
      },
      py::arg("tiles"));

  py::class_<fed::Site>(m, "Site")
      .def_property_readonly("dbsid", &fed::Site::dbsid)
      .def_property_readonly("store", py::overload_cast<>(&fed::Site::store), py::return_value_policy::reference_internal)
      .def_property_readonly("tiles", [](const fed::Site& s) { return s.tessellation().tiles; })
      .def_property_readonly("index_version", [](const fed::Site& s) { return s.tessellation().version; })
      .def_property_readonly("counters", [](const fed::Site& s) { return counters_dict(s.counters()); })
      .def("lookup", [](const fed::Site& s, const Rect& area) { return s.global_index().lookup(area); },
           py::arg("area"))
      .def("refresh_index", &fed::Site::refresh_index);

  py::class_<PyFederation>(m, "Federation")
      .def(py::init<double, double, bool, std::uint64_t>(), py::arg("latency_ms") = 5.0,
           py::arg("bandwidth_bytes_per_ms") = 12500.0, py::arg("caching") = true, py::arg("seed") = 1)
      .def(
          "add_site",
          [](PyFederation& f, const std::string& dbsid, const std::string& dialect, std::size_t k, int levels,
             bool flooding, bool strict, double sync_interval_ms) -> fed::Site& {
            return f.add_site(dbsid, dialect, k, levels, flooding, strict, sync_interval_ms);
          },
          py::arg("dbsid"), py::arg("dialect") = "A", py::arg("k") = 10000, py::arg("levels") = 3,
          py::arg("flooding") = false, py::arg("strict") = false, py::arg("sync_interval_ms") = 1000.0,
          py::return_value_policy::reference_internal)
      .def(
          "site", [](PyFederation& f, const std::string& dbsid) -> fed::Site& { return f.get().site(dbsid); },
          py::arg("dbsid"), py::return_value_policy::reference_internal)
      .def_property_readonly("dbsids", [](PyFederation& f) { return f.get().dbsids(); })
      .def_property_readonly("now_ms", [](PyFederation& f) { return to_ms(f.get().loop().now()); })
      .def("start", [](PyFederation& f) { f.get().start(); })
      .def("set_caching", [](PyFederation& f, bool on) { f.get().set_caching(on); }, py::arg("on"))
      .def("run_for", &PyFederation::run_for, py::arg("ms"))
      .def("query", &PyFederation::query, py::arg("from_site"), py::arg("did"), py::arg("area"),
           py::arg("filters") = std::map<std::string, std::string>{}, py::arg("user") = "user",
           py::arg("deadline_ms") = 60000.0);

  py::class_<harness::ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def(py::init([](const py::kwargs& kw) {
        harness::ScenarioConfig c;
        for (const auto& [k, v] : kw) c.set(py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
        return c;
      }))
      .def_static("load", &harness::ScenarioConfig::load, py::arg("path"))
      .def_static(
          "parse",
          [](const std::string& text) {
            std::istringstream in(text);
            return harness::ScenarioConfig::parse(in);
          },
          py::arg("text"))
      .def_static("keys", &harness::ScenarioConfig::keys)
      .def(
          "set", [](harness::ScenarioConfig& c, const std::string& k, const py::object& v) {
            c.set(k, py::str(v).cast<std::string>());
          },
          py::arg("key"), py::arg("value"))
      .def("get", &harness::ScenarioConfig::get, py::arg("key"))
      .def("dump", &harness::ScenarioConfig::dump)
      .def("__repr__", &harness::ScenarioConfig::dump);

  m.def(
      "run_trial",
      [](const harness::ScenarioConfig& c) {
        harness::TrialMetrics metrics;
        {
          py::gil_scoped_release release;
          metrics = harness::run_trial(c);
        }
        return metrics_dict(metrics);
      },
      py::arg("config"));

  m.def(
      "find_max_rate",
      [](const harness::ScenarioConfig& c) {
        harness::CapacityResult r;
        {
          py::gil_scoped_release release;
          r = harness::find_max_rate(c);
        }
        py::list probes;
        for (const auto& p : r.probes) {
          py::dict d;
          d["rate"] = p.rate;
          d["stable"] = p.stable;
          d["mean_response_ms"] = p.mean_response_ms;
          d["rejected"] = p.rejected;
          d["timed_out"] = p.timed_out;
          probes.append(d);
        }
        return py::make_tuple(r.rate, probes);
      },
      py::arg("config"));

  m.def(
      "synth_pois",
      [](std::size_t count, std::uint64_t seed) {
        py::list out;
        for (const auto& f : harness::synth_pois(count, seed)) {
          const auto& p = std::get<Point>(f.geometry);
          out.append(py::make_tuple(p, f.properties));
        }
        return out;
      },
      py::arg("count"), py::arg("seed") = 1);
}
