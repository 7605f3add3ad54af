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

#include "icnfed/harness/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "icnfed/common/error.hpp"
#include "icnfed/index/global_index.hpp"

namespace icnfed::harness {

namespace {

std::string fmt(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string fixed3(double v) {
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3f", v);
  return buf.data();
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ParseError("bad value '" + std::string(value) + "' for " + std::string(key));
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) bad_value(key, v);
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Field {
  std::string key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view)> set;
};

template <typename T>
Field size_field(std::string key, T ScenarioConfig::*member) {
  return {key, [member](const ScenarioConfig& c) { return std::to_string(c.*member); },
          [member, key](ScenarioConfig& c, std::string_view v) { c.*member = static_cast<T>(to_u64(key, v)); }};
}

Field double_field(std::string key, double ScenarioConfig::*member) {
  return {key, [member](const ScenarioConfig& c) { return fmt(c.*member); },
          [member, key](ScenarioConfig& c, std::string_view v) { c.*member = to_double(key, v); }};
}

Field bool_field(std::string key, bool ScenarioConfig::*member) {
  return {key, [member](const ScenarioConfig& c) { return std::string(c.*member ? "on" : "off"); },
          [member, key](ScenarioConfig& c, std::string_view v) { c.*member = to_bool(key, v); }};
}

template <typename Get, typename Set>
Field field(std::string key, Get get, Set set) {
  return {std::move(key), get, set};
}

const std::vector<Field>& fields() {
  using C = ScenarioConfig;
  static const std::vector<Field> table = {
      size_field("sites", &C::sites),
      field("dialects", [](const C& c) { return c.dialects; },
            [](C& c, std::string_view v) {
              if (v.empty()) bad_value("dialects", v);
              for (char d : v) store::parse_dialect(std::string_view(&d, 1));
              c.dialects = std::string(v);
            }),
      double_field("latency_ms", &C::latency_ms),
      double_field("bandwidth", &C::bandwidth_bytes_per_ms),
      size_field("cs_capacity", &C::cs_capacity),
      bool_field("cache", &C::cache),
      field("dataset", [](const C& c) { return c.dataset; }, [](C& c, std::string_view v) { c.dataset = v; }),
      size_field("synth_pois", &C::synth_pois),
      size_field("data_seed", &C::data_seed),
      field("locality", [](const C& c) { return std::string(to_string(c.locality)); },
            [](C& c, std::string_view v) { c.locality = parse_locality(v); }),
      field("did", [](const C& c) { return c.did; },
            [](C& c, std::string_view v) {
              if (v.empty() || v.find('/') != std::string_view::npos) bad_value("did", v);
              c.did = v;
              c.workload.did = v;
            }),
      size_field("levels", &C::levels),
      field("index", [](const C& c) { return std::string(c.index == fed::IndexMode::Adaptive ? "adaptive" : "uniform"); },
            [](C& c, std::string_view v) {
              if (v == "adaptive") c.index = fed::IndexMode::Adaptive;
              else if (v == "uniform") c.index = fed::IndexMode::Uniform;
              else bad_value("index", v);
            }),
      size_field("k", &C::k),
      size_field("uniform_level", &C::uniform_level),
      field("mode", [](const C& c) { return std::string(c.flooding ? "flooding" : "routing"); },
            [](C& c, std::string_view v) {
              if (v == "flooding") c.flooding = true;
              else if (v == "routing") c.flooding = false;
              else bad_value("mode", v);
            }),
      bool_field("strict", &C::strict),
      double_field("sync_interval_ms", &C::sync_interval_ms),
      double_field("query_timeout_ms", &C::query_timeout_ms),
      size_field("fetch_parallelism", &C::fetch_parallelism),
      size_field("odata_freshness_ms", &C::odata_freshness_ms),
      double_field("warmup_ms", &C::warmup_ms),
      field("servers", [](const C& c) { return std::to_string(c.service.servers); },
            [](C& c, std::string_view v) { c.service.servers = static_cast<int>(to_u64("servers", v)); }),
      field("queue", [](const C& c) { return std::to_string(c.service.queue_capacity); },
            [](C& c, std::string_view v) { c.service.queue_capacity = to_u64("queue", v); }),
      field("db_servers", [](const C& c) { return std::to_string(c.service.db_servers); },
            [](C& c, std::string_view v) { c.service.db_servers = static_cast<int>(to_u64("db_servers", v)); }),
      field("db_queue", [](const C& c) { return std::to_string(c.service.db_queue_capacity); },
            [](C& c, std::string_view v) { c.service.db_queue_capacity = to_u64("db_queue", v); }),
      field("front_ms", [](const C& c) { return fmt(c.service.front_ms); },
            [](C& c, std::string_view v) { c.service.front_ms = to_double("front_ms", v); }),
      field("query_base_ms", [](const C& c) { return fmt(c.service.query_base_ms); },
            [](C& c, std::string_view v) { c.service.query_base_ms = to_double("query_base_ms", v); }),
      field("per_object_ms", [](const C& c) { return fmt(c.service.query_per_object_ms); },
            [](C& c, std::string_view v) { c.service.query_per_object_ms = to_double("per_object_ms", v); }),
      field("fetch_ms", [](const C& c) { return fmt(c.service.fetch_ms); },
            [](C& c, std::string_view v) { c.service.fetch_ms = to_double("fetch_ms", v); }),
      field("dialect_a_factor", [](const C& c) { return fmt(c.service.dialect_a_factor); },
            [](C& c, std::string_view v) { c.service.dialect_a_factor = to_double("dialect_a_factor", v); }),
      field("dialect_b_factor", [](const C& c) { return fmt(c.service.dialect_b_factor); },
            [](C& c, std::string_view v) { c.service.dialect_b_factor = to_double("dialect_b_factor", v); }),
      field("trial_length", [](const C& c) { return std::to_string(c.workload.trial_length); },
            [](C& c, std::string_view v) { c.workload.trial_length = to_u64("trial_length", v); }),
      field("area_km2", [](const C& c) { return fmt(c.workload.area_km2); },
            [](C& c, std::string_view v) { c.workload.area_km2 = to_double("area_km2", v); }),
      field("data_centred", [](const C& c) { return fmt(c.workload.data_centred); },
            [](C& c, std::string_view v) {
              auto f = to_double("data_centred", v);
              if (!(f >= 0 && f <= 1)) bad_value("data_centred", v);
              c.workload.data_centred = f;
            }),
      field("rate", [](const C& c) { return fmt(c.workload.rate); },
            [](C& c, std::string_view v) { c.workload.rate = to_double("rate", v); }),
      field("seed", [](const C& c) { return std::to_string(c.workload.seed); },
            [](C& c, std::string_view v) { c.workload.seed = to_u64("seed", v); }),
      field("bbox",
            [](const C& c) {
              const auto& b = c.workload.box;
              return fmt(b.lon_min) + "," + fmt(b.lat_min) + "," + fmt(b.lon_max) + "," + fmt(b.lat_max);
            },
            [](C& c, std::string_view v) {
              std::array<double, 4> x{};
              std::string_view rest = v;
              for (std::size_t i = 0; i < 4; ++i) {
                auto comma = rest.find(',');
                if ((comma == std::string_view::npos) != (i == 3)) bad_value("bbox", v);
                x[i] = to_double("bbox", trim(rest.substr(0, comma)));
                if (comma != std::string_view::npos) rest = rest.substr(comma + 1);
              }
              if (!(x[0] < x[2] && x[1] < x[3])) bad_value("bbox", v);
              c.workload.box = BBox{x[0], x[1], x[2], x[3]};
            }),
      field("stability_fraction", [](const C& c) { return fmt(c.stability.trailing_fraction); },
            [](C& c, std::string_view v) {
              auto f = to_double("stability_fraction", v);
              if (!(f > 0 && f <= 1)) bad_value("stability_fraction", v);
              c.stability.trailing_fraction = f;
            }),
      field("stability_theta", [](const C& c) { return c.stability.theta ? fmt(*c.stability.theta) : "auto"; },
            [](C& c, std::string_view v) {
              if (v == "auto") c.stability.theta.reset();
              else c.stability.theta = to_double("stability_theta", v);
            }),
      size_field("trials", &C::trials),
      double_field("capacity_resolution", &C::capacity_resolution),
      double_field("capacity_min_rate", &C::capacity_min_rate),
      double_field("capacity_max_rate", &C::capacity_max_rate),
  };
  return table;
}

const Field& find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key == key) return f;
  throw ParseError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

void ScenarioConfig::set(std::string_view key, std::string_view value) { find_field(key).set(*this, trim(value)); }

std::string ScenarioConfig::get(std::string_view key) const { return find_field(key).get(*this); }

const std::vector<std::string>& ScenarioConfig::keys() {
  static const std::vector<std::string> out = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return out;
}

ScenarioConfig ScenarioConfig::parse(std::istream& in) {
  ScenarioConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      c.set(trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open " + path);
  return parse(in);
}

std::string ScenarioConfig::dump() const {
  std::string out;
  for (const auto& f : fields()) out += f.key + " = " + f.get(*this) + "\n";
  return out;
}

std::vector<store::Feature> load_features(const ScenarioConfig& config) {
  if (config.dataset.empty()) return synth_pois(config.synth_pois, config.data_seed, config.workload.box);
  return store::read_features(config.dataset);
}

TrialMetrics run_trial(const ScenarioConfig& config, const std::vector<store::Feature>* features,
                       const ResultObserver& observer) {
  if (config.sites == 0) throw InvalidArgument("need at least one site");
  std::vector<store::Feature> loaded;
  if (!features) {
    loaded = load_features(config);
    features = &loaded;
  }

  fed::FederationConfig fc;
  fc.access_link = sim::LinkParams{config.latency_ms, config.bandwidth_bytes_per_ms};
  fc.site_forwarder.cs_capacity = config.cs_capacity;
  fc.site_forwarder.caching = config.cache;
  fc.provider_forwarder = fc.site_forwarder;
  fc.seed = config.workload.seed;
  fed::Federation fed(fc);

  for (std::size_t i = 0; i < config.sites; ++i) {
    fed::SiteConfig sc;
    sc.dbsid = "dbs#" + std::to_string(i + 1);
    sc.dialect = store::parse_dialect(std::string_view(&config.dialects[i % config.dialects.size()], 1));
    sc.grid_levels = config.levels;
    sc.index_mode = config.index;
    sc.k = config.k;
    sc.uniform_level = config.uniform_level;
    sc.sync_interval = from_ms(config.sync_interval_ms);
    sc.query_timeout = from_ms(config.query_timeout_ms);
    sc.fetch_parallelism = config.fetch_parallelism;
    sc.odata_freshness_ms = config.odata_freshness_ms;
    sc.flooding = config.flooding;
    sc.strict = config.strict;
    sc.service = config.service;
    fed.add_site(sc);
  }
  auto sites = fed.sites();
  auto assignment = assign(*features, config.sites, config.locality, config.data_seed);
  for (std::size_t s = 0; s < config.sites; ++s) {
    for (auto idx : assignment.sites[s]) {
      const auto& f = (*features)[idx];
      sites[s]->store().insert(config.did, std::to_string(idx), f.geometry, f.properties);
    }
  }

  auto& loop = fed.loop();
  fed.start();
  loop.run_until(from_ms(config.warmup_ms));
  auto start = loop.now();

  auto events = generate_workload(config.workload, config.sites, features);
  TrialMetrics m;
  m.queries.resize(events.size());
  std::size_t done = 0;
  for (const auto& ev : events) {
    loop.schedule_at(start + ev.offset, [&, ev_ptr = &ev] {
      sites[ev_ptr->site]->submit_query("harness", ev_ptr->stmt, [&, ev_ptr](const fed::FederatedResult& r) {
        auto& rec = m.queries[ev_ptr->index];
        rec.query_id = ev_ptr->index;
        rec.site = ev_ptr->site;
        rec.submit_ms = to_ms(r.submitted - start);
        rec.resolve_ms = to_ms(r.resolved - start);
        rec.contacted = r.contacted.size();
        rec.objects = r.objects.size();
        rec.false_positives = r.false_positives.size();
        rec.complete = r.complete;
        rec.rejected = r.rejected;
        m.between_phase_misses += r.between_phase_misses;
        if (observer) observer(*ev_ptr, r);
        ++done;
      });
    });
  }
  loop.run_while_not([&] { return done == events.size(); });
  if (done != events.size()) throw Error("simulation ended with unresolved queries");
  m.end_ms = to_ms(loop.now() - start);

  std::vector<double> response;
  for (const auto& q : m.queries) {
    ++m.submitted;
    m.false_positives += q.false_positives;
    if (q.rejected) {
      ++m.rejected;
      continue;
    }
    q.complete ? ++m.resolved : ++m.timed_out;
    response.push_back(q.resolve_ms - q.submit_ms);
  }
  if (!response.empty()) {
    double sum = 0, sq = 0;
    for (double r : response) sum += r;
    m.mean_response_ms = sum / static_cast<double>(response.size());
    for (double r : response) sq += (r - m.mean_response_ms) * (r - m.mean_response_ms);
    if (response.size() > 1) {
      auto n = static_cast<double>(response.size());
      m.ci95_ms = 1.96 * std::sqrt(sq / (n - 1)) / std::sqrt(n);
    }
  }
  if (response.size() >= kMinStabilitySamples) m.stability = stability_test(response, config.stability);
  m.stable = (!m.stability || m.stability->stable) && m.rejected == 0 && m.timed_out == 0;

  for (auto* s : sites) {
    SiteMetrics sm;
    sm.dbsid = s->dbsid();
    sm.objects = s->store().size();
    sm.tiles = s->tessellation().tiles.size();
    sm.index_version = s->tessellation().version;
    sm.db_queries = s->counters().db_queries;
    sm.query_ratio = m.submitted ? static_cast<double>(sm.db_queries) / static_cast<double>(m.submitted) : 0;
    sm.ointerests_served = s->counters().ointerests_served;
    sm.announcement_bytes = sm.tiles * index::kTileRecordSize;
    m.gdata_bytes += s->counters().gdata_bytes_served;
    m.announcement_bytes += sm.announcement_bytes;
    m.tiles += sm.tiles;
    m.sites.push_back(std::move(sm));
  }
  auto& net = fed.network();
  for (sim::NodeId n = 0; n < net.node_count(); ++n) {
    m.cache_hits += net.forwarder(n).content_store().hits();
    m.cache_misses += net.forwarder(n).content_store().misses();
  }
  for (const auto& link : net.links()) {
    m.links.push_back(LinkRecord{net.name(link.a), net.name(link.b), link.stats[0]});
    m.links.push_back(LinkRecord{net.name(link.b), net.name(link.a), link.stats[1]});
  }
  return m;
}

void write_queries_csv(std::ostream& out, const TrialMetrics& m) {
  out << "query_id,submit_ms,resolve_ms,contacted,objects,complete\n";
  for (const auto& q : m.queries) {
    out << q.query_id << ',' << fixed3(q.submit_ms) << ',' << fixed3(q.resolve_ms) << ',' << q.contacted << ','
        << q.objects << ',' << (q.complete ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const TrialMetrics& m) {
  out << "metric,value\n";
  auto row = [&](const std::string& k, const std::string& v) { out << k << ',' << v << '\n'; };
  row("submitted", std::to_string(m.submitted));
  row("resolved", std::to_string(m.resolved));
  row("timed_out", std::to_string(m.timed_out));
  row("rejected", std::to_string(m.rejected));
  row("mean_response_ms", fixed3(m.mean_response_ms));
  row("ci95_ms", fixed3(m.ci95_ms));
  row("stable", m.stable ? "1" : "0");
  if (m.stability) {
    row("stability_slope", fixed3(m.stability->slope * 1000) + "e-3");
    row("stability_threshold", fixed3(m.stability->threshold * 1000) + "e-3");
  }
  row("false_positives", std::to_string(m.false_positives));
  row("between_phase_misses", std::to_string(m.between_phase_misses));
  row("cache_hits", std::to_string(m.cache_hits));
  row("cache_misses", std::to_string(m.cache_misses));
  row("tiles", std::to_string(m.tiles));
  row("announcement_bytes", std::to_string(m.announcement_bytes));
  row("gdata_bytes", std::to_string(m.gdata_bytes));
  row("end_ms", fixed3(m.end_ms));
  for (const auto& s : m.sites) {
    row(s.dbsid + ".objects", std::to_string(s.objects));
    row(s.dbsid + ".tiles", std::to_string(s.tiles));
    row(s.dbsid + ".index_version", std::to_string(s.index_version));
    row(s.dbsid + ".db_queries", std::to_string(s.db_queries));
    row(s.dbsid + ".query_ratio", fixed3(s.query_ratio));
    row(s.dbsid + ".ointerests_served", std::to_string(s.ointerests_served));
    row(s.dbsid + ".announcement_bytes", std::to_string(s.announcement_bytes));
  }
}

void write_links_csv(std::ostream& out, const TrialMetrics& m) {
  out << "from,to,packets,bytes,interests,data\n";
  for (const auto& l : m.links) {
    out << l.from << ',' << l.to << ',' << l.stats.packets << ',' << l.stats.bytes << ',' << l.stats.interests << ','
        << l.stats.data << '\n';
  }
}

}  // namespace icnfed::harness
