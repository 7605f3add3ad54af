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
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "icnfed/icn/security.hpp"
#include "icnfed/index/global_index.hpp"
#include "icnfed/sim/network.hpp"
#include "icnfed/sim/server_pool.hpp"
#include "icnfed/store/spatial_store.hpp"

namespace icnfed::fed {

/// Modelled service capacity of a site. The query processor is a thread
/// pool whose threads stay busy for the whole federated query; the database
/// serves local statements, remote statements and object reads.
struct ServiceModel {
  int servers = 4;  // query processor threads
  std::size_t queue_capacity = 1000;
  int db_servers = 4;
  std::size_t db_queue_capacity = 1000;
  double front_ms = 5.0;  // front end work per user query, on its thread
  double query_base_ms = 50.0;
  double query_per_object_ms = 2.0;
  double fetch_ms = 2.0;  // serving one oInterest
  double dialect_a_factor = 1.0;
  double dialect_b_factor = 1.5;

  double factor(store::Dialect d) const { return d == store::Dialect::A ? dialect_a_factor : dialect_b_factor; }
};

enum class IndexMode { Adaptive, Uniform };

struct SiteConfig {
  std::string dbsid;
  store::Dialect dialect = store::Dialect::A;
  int grid_levels = 3;
  IndexMode index_mode = IndexMode::Adaptive;
  std::size_t k = 10000;   // adaptive: max active tiles
  int uniform_level = 1;   // uniform: tile level
  SimTime sync_interval = kSecond;
  SimTime query_timeout = 4 * kSecond;
  std::size_t fetch_parallelism = 16;
  std::int64_t odata_freshness_ms = 60000;
  std::int64_t gdata_freshness_ms = 10000;
  std::size_t max_payload = icn::kDefaultMaxPayload;
  std::size_t max_name_bytes = 3500;
  bool flooding = false;
  /// Fail a query (complete = false) when an object vanished between phases.
  bool strict = false;
  /// Users allowed to query through this front end; "*" admits everyone.
  std::set<std::string> allowed_users = {"*"};
  ServiceModel service;
};

struct FederatedResult {
  std::uint64_t query_id = 0;
  std::vector<store::SpatialObject> objects;  // sorted by oName
  std::set<std::string> contacted;
  /// Contacted sites that answered with no matching object.
  std::set<std::string> false_positives;
  bool complete = true;
  bool rejected = false;
  std::string reject_reason;
  std::size_t between_phase_misses = 0;
  SimTime submitted = 0;
  SimTime resolved = 0;
  double fetch_names_ms = 0;
  double fetch_objects_ms = 0;
};

struct SiteCounters {
  std::uint64_t queries_submitted = 0;
  std::uint64_t queries_rejected = 0;
  std::uint64_t queries_resolved = 0;
  std::uint64_t queries_incomplete = 0;
  std::uint64_t db_queries = 0;  // statements executed for federated queries
  std::uint64_t db_rejected = 0;
  std::uint64_t qinterests_sent = 0;
  std::uint64_t qinterests_served = 0;
  std::uint64_t ointerests_sent = 0;
  std::uint64_t ointerests_served = 0;
  std::uint64_t ointerests_unknown = 0;
  std::uint64_t between_phase_misses = 0;
  std::uint64_t interest_timeouts = 0;
  std::uint64_t bad_signatures = 0;
  std::uint64_t vinterests_sent = 0;
  std::uint64_t ginterests_sent = 0;
  std::uint64_t gdata_served = 0;
  std::uint64_t gdata_bytes_served = 0;
  std::uint64_t index_versions = 0;
  std::uint64_t tessellations_merged = 0;
};

/// A federation member: its database, ICN application (front end, query
/// processor, producer) and index processor. All work runs on the shared
/// event loop; a site is driven only through events.
class Site {
 public:
  using Callback = std::function<void(const FederatedResult&)>;

  Site(SiteConfig config, icn::Signer signer, sim::Network& net, sim::NodeId node,
       const icn::KeyRegistry& registry, std::uint64_t seed);
  ~Site();
  Site(const Site&) = delete;
  Site& operator=(const Site&) = delete;

  const SiteConfig& config() const noexcept { return config_; }
  const std::string& dbsid() const noexcept { return config_.dbsid; }
  sim::NodeId node() const noexcept { return node_; }
  const icn::Signer& signer() const noexcept { return signer_; }

  /// Home-DBS CRUD goes straight to the store.
  store::SpatialStore& store() noexcept { return store_; }
  const store::SpatialStore& store() const noexcept { return store_; }
  const index::GlobalIndexStore& global_index() const noexcept { return global_; }
  const index::Tessellation& tessellation() const noexcept { return local_; }
  const SiteCounters& counters() const noexcept { return counters_; }
  const sim::ServerPool& query_pool() const noexcept { return qp_; }
  const sim::ServerPool& db_pool() const noexcept { return db_; }

  void set_members(std::vector<std::string> dbsids) { members_ = std::move(dbsids); }
  void set_flooding(bool on) noexcept { config_.flooding = on; }
  void set_strict(bool on) noexcept { config_.strict = on; }

  /// Starts the periodic index processor (first run immediately).
  void start();
  /// Recomputes the local tessellation now; returns whether the version changed.
  bool refresh_index();
  /// Sends one vInterest for the current version (if any).
  void advertise();

  /// Starts a federated query; `done` runs once, from the event loop.
  std::uint64_t submit_query(const std::string& user, const store::QueryStatement& stmt, Callback done);

  /// `{dbsid}/q/{did}/{escaped statement}/{nonce}`.
  static Name make_qname(std::string_view target, const store::QueryStatement& stmt, std::uint64_t nonce);

 private:
  using DataHandler = std::function<void(const icn::DataPtr&)>;
  struct Waiter {
    std::uint64_t id;
    DataHandler on_data;
    std::function<void()> on_timeout;
    sim::EventId timer;
  };
  struct Query;
  struct Response {
    std::vector<icn::DataPtr> segments;
  };

  void on_packet(const icn::Packet& p);
  void on_interest(const icn::InterestPtr& i);
  void on_data(const icn::DataPtr& d);

  void express(const Name& name, bool sign, SimTime lifetime, DataHandler on_data,
               std::function<void()> on_timeout);
  /// Fetches segmented content: the first Interest names `first`, the rest
  /// `base/s{n}`. `done` gets the content, or nullopt after any timeout or
  /// signature/segment error.
  void fetch(const Name& base, const Name& first, bool sign, const std::string& producer,
             std::function<void(std::optional<icn::Bytes>)> done);
  bool trusted(const icn::DataPtr& d, const std::string& producer);

  void reply(const Name& base, const icn::Bytes& content, std::uint32_t segment, std::int64_t freshness_ms);
  icn::DataPtr make_data(Name name, icn::Bytes payload, std::int64_t freshness_ms) const;

  void serve_query(const icn::InterestPtr& i);
  void serve_object(const icn::InterestPtr& i);
  void serve_index(const icn::InterestPtr& i);
  void on_vinterest(const icn::InterestPtr& i);

  void start_targets(std::uint64_t qid);
  void site_answered(std::uint64_t qid, const std::string& dbsid, std::optional<std::vector<Name>> names,
                     std::size_t matches);
  void pump_fetches(std::uint64_t qid);
  void maybe_finish(std::uint64_t qid);
  void finish(std::uint64_t qid);

  void tick();
  SimTime query_service_time(std::size_t matches) const;

  SiteConfig config_;
  icn::Signer signer_;
  sim::Network& net_;
  sim::EventLoop& loop_;
  sim::NodeId node_;
  const icn::KeyRegistry& registry_;
  std::mt19937_64 rng_;
  store::SpatialStore store_;
  index::GlobalIndexStore global_;
  sim::ServerPool qp_;
  sim::ServerPool db_;
  std::vector<std::string> members_;

  std::unordered_map<Name, std::vector<Waiter>, NameHash> waiting_;
  std::uint64_t next_waiter_ = 0;
  std::map<std::uint64_t, std::unique_ptr<Query>> queries_;
  std::uint64_t next_query_ = 1;
  std::unordered_map<Name, Response, NameHash> responses_;

  index::Tessellation local_;
  std::uint64_t indexed_revision_ = ~std::uint64_t{0};
  std::vector<icn::DataPtr> published_;
  std::map<std::string, std::uint64_t> fetching_index_;
  bool started_ = false;

  SiteCounters counters_;
};

}  // namespace icnfed::fed
