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
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icnfed/fed/federation.hpp"
#include "icnfed/harness/dataset.hpp"
#include "icnfed/harness/stability.hpp"
#include "icnfed/harness/workload.hpp"

namespace icnfed::harness {

/// Everything a run depends on. Loaded from a flat `key = value` file; see
/// ScenarioConfig::keys() for the accepted keys and their defaults.
struct ScenarioConfig {
  // topology
  std::size_t sites = 3;
  std::string dialects = "ABB";  // cycled over the sites
  double latency_ms = 5;
  double bandwidth_bytes_per_ms = 12500;
  std::size_t cs_capacity = 256000;
  bool cache = true;

  // data
  std::string dataset;  // GeoJSON or CSV path; empty means synthetic
  std::size_t synth_pois = 10000;
  std::uint64_t data_seed = 1;
  Locality locality = Locality::Random;
  std::string did = "POI";

  // index and protocol
  int levels = 3;
  fed::IndexMode index = fed::IndexMode::Adaptive;
  std::size_t k = 1000;  // scaled to the desk-size dataset
  int uniform_level = 1;
  bool flooding = false;
  bool strict = false;
  double sync_interval_ms = 1000;
  double query_timeout_ms = 4000;
  std::size_t fetch_parallelism = 16;
  std::int64_t odata_freshness_ms = 60000;
  double warmup_ms = 3000;

  fed::ServiceModel service;

  // workload
  WorkloadConfig workload;

  // evaluation
  StabilityConfig stability;
  std::size_t trials = 3;
  double capacity_resolution = 0.05;
  double capacity_min_rate = 1;
  double capacity_max_rate = 100000;

  /// Throws ParseError for an unknown key or a bad value.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;
  static const std::vector<std::string>& keys();

  /// `key = value` lines; `#` starts a comment.
  static ScenarioConfig parse(std::istream& in);
  static ScenarioConfig load(const std::string& path);
  /// Every key with its current value, in keys() order.
  std::string dump() const;
};

struct QueryRecord {
  std::size_t query_id = 0;
  std::size_t site = 0;
  double submit_ms = 0;
  double resolve_ms = 0;
  std::size_t contacted = 0;
  std::size_t objects = 0;
  std::size_t false_positives = 0;
  bool complete = false;
  bool rejected = false;
};

struct SiteMetrics {
  std::string dbsid;
  std::size_t objects = 0;
  std::size_t tiles = 0;
  std::uint64_t index_version = 0;
  std::uint64_t db_queries = 0;
  double query_ratio = 0;
  std::uint64_t ointerests_served = 0;
  std::size_t announcement_bytes = 0;  // serialized tessellation
};

struct LinkRecord {
  std::string from, to;
  sim::LinkStats stats;
};

struct TrialMetrics {
  std::vector<QueryRecord> queries;
  std::vector<SiteMetrics> sites;
  std::vector<LinkRecord> links;
  std::size_t submitted = 0;
  std::size_t resolved = 0;  // complete answers
  std::size_t timed_out = 0;  // answered incomplete
  std::size_t rejected = 0;
  double mean_response_ms = 0;
  double ci95_ms = 0;  // normal approximation
  std::size_t false_positives = 0;
  std::size_t between_phase_misses = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::uint64_t gdata_bytes = 0;  // gData bytes sent by producers
  std::size_t announcement_bytes = 0;
  std::size_t tiles = 0;
  std::optional<StabilityVerdict> stability;
  /// Trend verdict and no rejected or timed-out query.
  bool stable = false;
  double end_ms = 0;
};

using ResultObserver = std::function<void(const QueryEvent&, const fed::FederatedResult&)>;

std::vector<store::Feature> load_features(const ScenarioConfig& config);

/// Builds the federation, ingests, warms up the index and runs the workload.
/// `features` avoids reloading the dataset across trials.
TrialMetrics run_trial(const ScenarioConfig& config, const std::vector<store::Feature>* features = nullptr,
                       const ResultObserver& observer = {});

/// Per-query rows: query_id,submit_ms,resolve_ms,contacted,objects,complete.
void write_queries_csv(std::ostream& out, const TrialMetrics& m);
/// metric,value rows.
void write_summary_csv(std::ostream& out, const TrialMetrics& m);
void write_links_csv(std::ostream& out, const TrialMetrics& m);

}  // namespace icnfed::harness
