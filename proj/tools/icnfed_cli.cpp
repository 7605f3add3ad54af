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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "icnfed/common/error.hpp"
#include "icnfed/harness/capacity.hpp"
#include "icnfed/harness/scenario.hpp"
#include "icnfed/index/tessellation.hpp"
#include "icnfed/store/ingest.hpp"

namespace fs = std::filesystem;
using namespace icnfed;

namespace {

harness::ScenarioConfig make_config(const std::string& path, const std::vector<std::string>& overrides) {
  auto c = path.empty() ? harness::ScenarioConfig{} : harness::ScenarioConfig::load(path);
  for (const auto& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("--set expects key=value, got " + kv);
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return c;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

std::string file_safe(std::string s) {
  for (auto& c : s)
    if (c == '#' || c == '/') c = '-';
  return s;
}

void write_tessellation_geojson(std::ostream& out, const std::vector<Tile>& tiles) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& t : tiles) {
    auto r = extent(t);
    features.push_back({{"type", "Feature"},
                        {"geometry",
                         {{"type", "Polygon"},
                          {"coordinates",
                           {{{r.min().lon(), r.min().lat()},
                             {r.max().lon(), r.min().lat()},
                             {r.max().lon(), r.max().lat()},
                             {r.min().lon(), r.max().lat()},
                             {r.min().lon(), r.min().lat()}}}}}},
                        {"properties", {{"tile", to_string(t)}, {"level", t.level}}}});
  }
  out << nlohmann::json{{"type", "FeatureCollection"}, {"features", features}}.dump(1) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial database federation over an ICN simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "Scenario file (key = value lines)")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", overrides, "Override a config key, key=value (repeatable)");
  };

  // synth
  std::size_t synth_count = 10000;
  std::uint64_t synth_seed = 1;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic clustered POI dataset");
  synth->add_option("-n,--count", synth_count, "Number of POIs");
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("-o,--out", synth_out, "Output file (.csv or GeoJSON)")->required();

  // ingest
  std::string ingest_out = "sites";
  auto* ingest = app.add_subcommand("ingest", "Split a dataset into per-site snapshot files");
  add_config(ingest);
  ingest->add_option("-o,--out-dir", ingest_out, "Directory for snapshot files");

  // tessellate
  std::string snapshot_path, tess_out;
  std::size_t tess_k = 100;
  int tess_levels = 3;
  auto* tess = app.add_subcommand("tessellate", "Compute the active tiles of a site snapshot");
  tess->add_option("snapshot", snapshot_path, "Site snapshot file")->required()->check(CLI::ExistingFile);
  tess->add_option("-k", tess_k, "Maximum number of tiles");
  tess->add_option("-l,--levels", tess_levels, "Grid levels");
  tess->add_option("-o,--out", tess_out, "Tessellation GeoJSON output");

  // run
  std::string run_out = "out";
  auto* run = app.add_subcommand("run", "Run one trial and write metrics CSVs");
  add_config(run);
  run->add_option("-o,--out-dir", run_out, "Directory for queries.csv, summary.csv, links.csv");

  // capacity
  std::string cap_out;
  auto* cap = app.add_subcommand("capacity", "Search for the maximum stable query rate");
  add_config(cap);
  cap->add_option("-o,--out", cap_out, "Probe CSV output (stdout if omitted)");

  // sweep
  std::vector<std::string> axes;
  bool sweep_capacity = false;
  std::string sweep_out;
  auto* sw = app.add_subcommand("sweep", "Run a grid of scenarios");
  add_config(sw);
  sw->add_option("-a,--axis", axes, "key=v1,v2,... (repeatable)")->required();
  sw->add_flag("--capacity", sweep_capacity, "Report the maximum stable rate of each point");
  sw->add_option("-o,--out", sweep_out, "CSV output (stdout if omitted)");

  // config
  auto* cfg = app.add_subcommand("config", "Print the effective configuration");
  add_config(cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      auto features = harness::synth_pois(synth_count, synth_seed);
      auto out = open_out(synth_out);
      if (fs::path(synth_out).extension() == ".csv") {
        store::write_csv(out, features);
      } else {
        store::write_geojson(out, features);
      }
      std::cout << "wrote " << features.size() << " features to " << synth_out << '\n';
    } else if (*ingest) {
      auto c = make_config(config_path, overrides);
      auto features = harness::load_features(c);
      auto a = harness::assign(features, c.sites, c.locality, c.data_seed);
      std::cout << "site,objects,file\n";
      for (std::size_t s = 0; s < c.sites; ++s) {
        std::string dbsid = "dbs#" + std::to_string(s + 1);
        store::SpatialStore st(dbsid, Grid(c.levels), store::Dialect::A);
        for (auto idx : a.sites[s]) st.insert(c.did, std::to_string(idx), features[idx].geometry, features[idx].properties);
        auto path = fs::path(ingest_out) / (file_safe(dbsid) + ".geojson");
        auto out = open_out(path);
        store::write_snapshot(out, st);
        std::cout << dbsid << ',' << st.size() << ',' << path.string() << '\n';
      }
      if (a.rejected) std::cout << "rejected," << a.rejected << ",\n";
    } else if (*tess) {
      std::ifstream in(snapshot_path);
      auto st = store::read_snapshot(in, "snapshot", Grid(tess_levels));
      auto smin = index::compute_smin(st);
      auto tiles = index::tessellate(smin, tess_k, tess_levels);
      if (!tess_out.empty()) {
        auto out = open_out(tess_out);
        write_tessellation_geojson(out, tiles);
      }
      std::cout << "objects," << st.size() << "\nsmin_tiles," << smin.size() << "\ntiles," << tiles.size()
                << "\ncost_deg2," << area_units_to_deg2(index::tessellation_cost(tiles, smin)) << "\nannouncement_bytes,"
                << tiles.size() * index::kTileRecordSize << '\n';
    } else if (*run) {
      auto c = make_config(config_path, overrides);
      auto m = harness::run_trial(c);
      fs::path dir(run_out);
      auto q = open_out(dir / "queries.csv");
      harness::write_queries_csv(q, m);
      auto s = open_out(dir / "summary.csv");
      harness::write_summary_csv(s, m);
      auto l = open_out(dir / "links.csv");
      harness::write_links_csv(l, m);
      std::cout << "queries " << m.submitted << ", mean response " << m.mean_response_ms << " ms, "
                << (m.stable ? "stable" : "unstable") << "; wrote " << dir.string() << '\n';
    } else if (*cap) {
      auto c = make_config(config_path, overrides);
      auto r = harness::find_max_rate(c);
      std::ofstream file;
      if (!cap_out.empty()) file = open_out(cap_out);
      std::ostream& out = cap_out.empty() ? std::cout : file;
      out << "rate,stable,mean_response_ms,rejected,timed_out\n";
      for (const auto& p : r.probes)
        out << p.rate << ',' << (p.stable ? 1 : 0) << ',' << p.mean_response_ms << ',' << p.rejected << ','
            << p.timed_out << '\n';
      std::cerr << "max stable rate: " << r.rate << " queries/s\n";
      if (!cap_out.empty()) std::cout << r.rate << '\n';
    } else if (*sw) {
      auto c = make_config(config_path, overrides);
      harness::SweepAxes parsed;
      for (const auto& a : axes) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw ParseError("--axis expects key=v1,v2, got " + a);
        auto& values = parsed[a.substr(0, eq)];
        std::stringstream ss(a.substr(eq + 1));
        for (std::string v; std::getline(ss, v, ',');) values.push_back(v);
      }
      std::ofstream file;
      if (!sweep_out.empty()) file = open_out(sweep_out);
      harness::sweep(c, parsed, sweep_capacity, sweep_out.empty() ? std::cout : file);
    } else if (*cfg) {
      std::cout << make_config(config_path, overrides).dump();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
