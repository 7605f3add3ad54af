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

#include "icnfed/fed/site.hpp"

#include <nlohmann/json.hpp>

#include "icnfed/common/error.hpp"
#include "icnfed/icn/segment.hpp"
#include "icnfed/index/tessellation.hpp"

namespace icnfed::fed {

using nlohmann::json;

struct Site::Query {
  explicit Query(store::QueryStatement s) : stmt(std::move(s)) {}

  store::QueryStatement stmt;
  Callback done;
  FederatedResult result;
  std::size_t outstanding_sites = 0;
  std::vector<Name> to_fetch;
  std::size_t next_fetch = 0;
  std::size_t in_flight = 0;
  std::map<std::string, store::SpatialObject> objects;
  SimTime names_done = 0;
  sim::ServerPool::Release release;
};

namespace {

struct FetchState {
  Name base;
  bool sign = false;
  std::string producer;
  icn::Reassembly parts;
  bool requested_rest = false;
  bool finished = false;
  std::function<void(std::optional<icn::Bytes>)> done;
};

icn::Bytes encode_onames(const std::vector<Name>& names, const std::string& error) {
  json j = json::object();
  json list = json::array();
  for (const auto& n : names) list.push_back(n.to_string());
  j["onames"] = std::move(list);
  if (!error.empty()) j["error"] = error;
  return icn::to_bytes(j.dump());
}

std::vector<Name> decode_onames(const icn::Bytes& content) {
  auto j = json::parse(content.begin(), content.end());
  std::vector<Name> out;
  for (const auto& n : j.at("onames")) out.push_back(Name::parse(n.get<std::string>()));
  return out;
}

}  // namespace

Site::Site(SiteConfig config, icn::Signer signer, sim::Network& net, sim::NodeId node,
           const icn::KeyRegistry& registry, std::uint64_t seed)
    : config_(std::move(config)),
      signer_(std::move(signer)),
      net_(net),
      loop_(net.loop()),
      node_(node),
      registry_(registry),
      rng_(seed),
      store_(config_.dbsid, Grid(config_.grid_levels), config_.dialect),
      global_(Grid(config_.grid_levels)),
      qp_(net.loop(), config_.service.servers, config_.service.queue_capacity),
      db_(net.loop(), config_.service.db_servers, config_.service.db_queue_capacity),
      local_{config_.dbsid, 0, {}} {
  net_.set_app(node_, [this](const icn::Packet& p) { on_packet(p); });
}

Site::~Site() = default;

Name Site::make_qname(std::string_view target, const store::QueryStatement& stmt, std::uint64_t nonce) {
  return Name{std::string(target), "q", stmt.did, escape_component(store::serialize(stmt)),
              std::to_string(nonce)};
}

SimTime Site::query_service_time(std::size_t matches) const {
  const auto& s = config_.service;
  return from_ms(s.factor(config_.dialect) * (s.query_base_ms + s.query_per_object_ms * static_cast<double>(matches)));
}

icn::DataPtr Site::make_data(Name name, icn::Bytes payload, std::int64_t freshness_ms) const {
  icn::DataPacket d{std::move(name), std::move(payload), freshness_ms, {}};
  icn::sign(d, signer_);
  return std::make_shared<const icn::DataPacket>(std::move(d));
}

// ---------------------------------------------------------------------------
// Packet dispatch and the consumer side

void Site::on_packet(const icn::Packet& p) {
  if (const auto* i = std::get_if<icn::InterestPtr>(&p)) {
    on_interest(*i);
  } else {
    on_data(std::get<icn::DataPtr>(p));
  }
}

void Site::on_interest(const icn::InterestPtr& i) {
  const auto& name = i->name;
  if (name.size() >= 2 && name[0] == config_.dbsid) {
    if (name[1] == "q") return serve_query(i);
    if (name[1] == "o") return serve_object(i);
    if (name[1] == "index") return serve_index(i);
    return;
  }
  if (name.has_prefix(index::notify_prefix())) on_vinterest(i);
}

void Site::on_data(const icn::DataPtr& d) {
  auto it = waiting_.find(d->name);
  if (it == waiting_.end()) return;
  auto waiters = std::move(it->second);
  waiting_.erase(it);
  for (auto& w : waiters) {
    loop_.cancel(w.timer);
    w.on_data(d);
  }
}

void Site::express(const Name& name, bool sign, SimTime lifetime, DataHandler on_data,
                   std::function<void()> on_timeout) {
  auto& waiters = waiting_[name];
  bool first = waiters.empty();
  auto id = next_waiter_++;
  auto timer = loop_.schedule_after(lifetime, [this, name, id] {
    auto it = waiting_.find(name);
    if (it == waiting_.end()) return;
    auto& ws = it->second;
    auto w = std::find_if(ws.begin(), ws.end(), [id](const Waiter& x) { return x.id == id; });
    if (w == ws.end()) return;
    auto cb = std::move(w->on_timeout);
    ws.erase(w);
    if (ws.empty()) waiting_.erase(it);
    ++counters_.interest_timeouts;
    cb();
  });
  waiters.push_back(Waiter{id, std::move(on_data), std::move(on_timeout), timer});
  if (!first) return;
  icn::InterestPacket interest{name, rng_(), lifetime / kMillisecond, {}};
  if (sign) icn::sign(interest, signer_);
  net_.send(node_, std::make_shared<const icn::InterestPacket>(std::move(interest)));
}

bool Site::trusted(const icn::DataPtr& d, const std::string& producer) {
  if (!icn::verify(*d, registry_) || d->key_locator().empty() || d->key_locator()[0] != producer) {
    ++counters_.bad_signatures;
    return false;
  }
  return true;
}

void Site::fetch(const Name& base, const Name& first, bool sign, const std::string& producer,
                 std::function<void(std::optional<icn::Bytes>)> done) {
  auto st = std::make_shared<FetchState>();
  st->base = base;
  st->sign = sign;
  st->producer = producer;
  st->done = std::move(done);

  // Handlers capture the shared state, never the other way round, so no
  // reference cycle outlives the fetch.
  auto fail = [st] {
    if (st->finished) return;
    st->finished = true;
    st->done(std::nullopt);
  };
  std::function<void(const icn::DataPtr&)> on_segment;
  on_segment = [this, st, fail](const icn::DataPtr& d) {
    if (st->finished) return;
    if (!trusted(d, st->producer)) return fail();
    bool complete = false;
    try {
      complete = st->parts.add(d->payload);
    } catch (const ParseError&) {
      return fail();
    }
    if (complete) {
      st->finished = true;
      return st->done(st->parts.content());
    }
    if (st->requested_rest) return;
    st->requested_rest = true;
    for (auto n : st->parts.missing()) {
      express(icn::segment_name(st->base, n), st->sign, config_.query_timeout,
              [this, st, fail](const icn::DataPtr& seg) {
                if (st->finished) return;
                if (!trusted(seg, st->producer)) return fail();
                try {
                  if (st->parts.add(seg->payload)) {
                    st->finished = true;
                    st->done(st->parts.content());
                  }
                } catch (const ParseError&) {
                  fail();
                }
              },
              fail);
    }
  };
  express(first, sign, config_.query_timeout, on_segment, fail);
}

// ---------------------------------------------------------------------------
// Producer side

void Site::reply(const Name& base, const icn::Bytes& content, std::uint32_t segment, std::int64_t freshness_ms) {
  auto segs = icn::segment(content, config_.max_payload);
  if (segment >= segs.size()) return;
  auto name = segment == 0 ? base : icn::segment_name(base, segment);
  net_.send(node_, make_data(std::move(name), std::move(segs[segment]), freshness_ms));
}

void Site::serve_query(const icn::InterestPtr& i) {
  if (!icn::verify(*i, registry_)) {
    ++counters_.bad_signatures;
    return;
  }
  const auto& name = i->name;
  if (name.size() != 5 && name.size() != 6) return;
  auto base = name.prefix(5);
  if (name.size() == 6) {
    auto seg = icn::segment_index(name);
    auto it = responses_.find(base);
    if (seg && it != responses_.end() && *seg < it->second.segments.size())
      net_.send(node_, it->second.segments[*seg]);
    return;
  }
  if (auto it = responses_.find(base); it != responses_.end()) {
    net_.send(node_, it->second.segments.front());
    return;
  }

  auto respond = [this, base](const std::vector<Name>& names, const std::string& error) {
    auto segs = icn::segment(encode_onames(names, error), config_.max_payload);
    Response r;
    for (std::uint32_t n = 0; n < segs.size(); ++n)
      r.segments.push_back(make_data(n == 0 ? base : icn::segment_name(base, n), std::move(segs[n]), 0));
    auto first = r.segments.front();
    responses_[base] = std::move(r);
    loop_.schedule_after(config_.query_timeout, [this, base] { responses_.erase(base); });
    ++counters_.qinterests_served;
    net_.send(node_, first);
  };

  std::optional<store::QueryStatement> stmt;
  std::string error;
  try {
    stmt = store::parse_statement(unescape_component(name[3]));
    if (stmt->did != name[2]) error = "data-set mismatch between name and statement";
  } catch (const ParseError& e) {
    error = e.what();
  }
  if (!error.empty()) return respond({}, error);

  auto names = std::make_shared<std::vector<Name>>();
  bool accepted = db_.submit(sim::ServerPool::Job{
      [this, names, stmt = *stmt] {
        ++counters_.db_queries;
        *names = store_.execute(store::translate(stmt, config_.dialect));
        return query_service_time(names->size());
      },
      [names, respond] { respond(*names, ""); }});
  if (!accepted) ++counters_.db_rejected;
}

void Site::serve_object(const icn::InterestPtr& i) {
  const auto& name = i->name;
  if (name.size() != 4 && name.size() != 5) return;
  auto base = name.prefix(4);
  std::uint32_t seg = 0;
  if (name.size() == 5) {
    auto s = icn::segment_index(name);
    if (!s) return;
    seg = *s;
  }
  auto content = std::make_shared<std::optional<icn::Bytes>>();
  bool accepted = db_.submit(sim::ServerPool::Job{
      [this, base, content] {
        if (const auto* obj = store_.find(base)) *content = icn::to_bytes(store::to_geojson(*obj));
        return from_ms(config_.service.fetch_ms);
      },
      [this, base, seg, content] {
        if (!*content) {
          ++counters_.ointerests_unknown;
          return;
        }
        ++counters_.ointerests_served;
        reply(base, **content, seg, config_.odata_freshness_ms);
      }});
  if (!accepted) ++counters_.db_rejected;
}

void Site::serve_index(const icn::InterestPtr& i) {
  if (!icn::verify(*i, registry_)) {
    ++counters_.bad_signatures;
    return;
  }
  auto ann = index::parse_gname(i->name);
  auto seg = icn::segment_index(i->name);
  if (!ann || !seg || i->name.size() != 5 || ann->dbsid != config_.dbsid) return;
  if (ann->version != local_.version || *seg >= published_.size()) return;
  ++counters_.gdata_served;
  counters_.gdata_bytes_served += icn::wire_size(*published_[*seg]);
  net_.send(node_, published_[*seg]);
}

// ---------------------------------------------------------------------------
// Index processor

void Site::start() {
  if (started_) return;
  started_ = true;
  loop_.schedule_at(loop_.now(), [this] { tick(); });
}

void Site::tick() {
  refresh_index();
  advertise();
  loop_.schedule_after(config_.sync_interval, [this] { tick(); });
}

bool Site::refresh_index() {
  if (store_.revision() == indexed_revision_) return false;
  indexed_revision_ = store_.revision();
  auto smin = index::compute_smin(store_);
  auto tiles = config_.index_mode == IndexMode::Adaptive
                   ? index::tessellate(smin, config_.k, config_.grid_levels)
                   : index::uniform_tessellation(smin, config_.uniform_level);
  if (tiles == local_.tiles && (local_.version > 0 || tiles.empty())) return false;
  local_ = index::Tessellation{config_.dbsid, local_.version + 1, std::move(tiles)};
  ++counters_.index_versions;

  published_.clear();
  auto base = index::gdata_name(config_.dbsid, local_.version);
  auto segs = icn::segment(index::serialize_tiles(local_.tiles), config_.max_payload);
  for (std::uint32_t n = 0; n < segs.size(); ++n)
    published_.push_back(make_data(icn::segment_name(base, n), std::move(segs[n]), config_.gdata_freshness_ms));
  global_.merge(local_);
  return true;
}

void Site::advertise() {
  if (local_.version == 0) return;
  icn::InterestPacket v{index::vinterest_name(config_.dbsid, local_.version), rng_(),
                        std::max<std::int64_t>(1, config_.sync_interval / kMillisecond / 2), {}};
  icn::sign(v, signer_);
  ++counters_.vinterests_sent;
  net_.send(node_, std::make_shared<const icn::InterestPacket>(std::move(v)));
}

void Site::on_vinterest(const icn::InterestPtr& i) {
  if (!icn::verify(*i, registry_)) {
    ++counters_.bad_signatures;
    return;
  }
  auto ann = index::parse_vinterest(i->name);
  if (!ann || ann->dbsid == config_.dbsid) return;
  if (i->signature->key_locator.empty() || i->signature->key_locator[0] != ann->dbsid) {
    ++counters_.bad_signatures;
    return;
  }
  auto known = global_.version(ann->dbsid);
  if (known && *known >= ann->version) return;
  auto f = fetching_index_.find(ann->dbsid);
  if (f != fetching_index_.end() && f->second >= ann->version) return;
  fetching_index_[ann->dbsid] = ann->version;
  ++counters_.ginterests_sent;

  auto base = index::gdata_name(ann->dbsid, ann->version);
  fetch(base, icn::segment_name(base, 0), true, ann->dbsid,
        [this, ann = *ann](std::optional<icn::Bytes> content) {
          auto f = fetching_index_.find(ann.dbsid);
          if (f != fetching_index_.end() && f->second == ann.version) fetching_index_.erase(f);
          if (!content) return;
          try {
            auto tiles = index::deserialize_tiles(*content, Grid(config_.grid_levels));
            if (global_.merge(index::Tessellation{ann.dbsid, ann.version, std::move(tiles)}))
              ++counters_.tessellations_merged;
          } catch (const ParseError&) {
            ++counters_.bad_signatures;
          }
        });
}

// ---------------------------------------------------------------------------
// Query processor

std::uint64_t Site::submit_query(const std::string& user, const store::QueryStatement& stmt, Callback done) {
  auto qid = next_query_++;
  ++counters_.queries_submitted;
  auto q = std::make_unique<Query>(stmt);
  q->done = std::move(done);
  q->result.query_id = qid;
  q->result.submitted = loop_.now();
  queries_.emplace(qid, std::move(q));

  auto reject = [this, qid](std::string reason) {
    auto& r = queries_.at(qid)->result;
    r.rejected = true;
    r.complete = false;
    r.reject_reason = std::move(reason);
    ++counters_.queries_rejected;
    loop_.schedule_at(loop_.now(), [this, qid] { finish(qid); });
  };

  if (!config_.allowed_users.contains("*") && !config_.allowed_users.contains(user)) {
    reject("user not authorized");
    return qid;
  }
  try {
    if (make_qname(config_.dbsid, stmt, 0).to_string().size() > config_.max_name_bytes) {
      reject("statement exceeds name budget");
      return qid;
    }
  } catch (const InvalidArgument& e) {
    reject(std::string("bad statement: ") + e.what());
    return qid;
  }
  bool accepted = qp_.submit_held([this, qid](sim::ServerPool::Release release) {
    queries_.at(qid)->release = std::move(release);
    loop_.schedule_after(from_ms(config_.service.front_ms), [this, qid] { start_targets(qid); });
  });
  if (!accepted) reject("query processor overloaded");
  return qid;
}

void Site::start_targets(std::uint64_t qid) {
  auto& q = *queries_.at(qid);
  std::set<std::string> targets;
  if (config_.flooding) {
    targets.insert(members_.begin(), members_.end());
    targets.insert(config_.dbsid);
  } else {
    targets = global_.lookup(q.stmt.area);
  }
  q.result.contacted = targets;
  q.outstanding_sites = targets.size();
  if (targets.empty()) {
    q.names_done = loop_.now();
    return maybe_finish(qid);
  }
  for (const auto& target : targets) {
    if (target == config_.dbsid) {
      // The local database is queried through its adapter directly.
      auto found = std::make_shared<std::vector<store::SpatialObject>>();
      bool accepted = db_.submit(sim::ServerPool::Job{
          [this, found, stmt = q.stmt] {
            ++counters_.db_queries;
            for (const auto& n : store_.execute(store::translate(stmt, config_.dialect)))
              found->push_back(store_.get(n));
            return query_service_time(found->size());
          },
          [this, qid, found] {
            auto& query = *queries_.at(qid);
            for (auto& obj : *found) query.objects.insert_or_assign(obj.oname.to_string(), std::move(obj));
            site_answered(qid, config_.dbsid, std::vector<Name>{}, found->size());
          }});
      if (!accepted) site_answered(qid, config_.dbsid, std::nullopt, 0);
      continue;
    }
    ++counters_.qinterests_sent;
    auto qname = make_qname(target, q.stmt, rng_());
    fetch(qname, qname, true, target, [this, qid, target](std::optional<icn::Bytes> content) {
      if (!content) return site_answered(qid, target, std::nullopt, 0);
      try {
        auto names = decode_onames(*content);
        auto n = names.size();
        site_answered(qid, target, std::move(names), n);
      } catch (const std::exception&) {
        site_answered(qid, target, std::nullopt, 0);
      }
    });
  }
}

void Site::site_answered(std::uint64_t qid, const std::string& dbsid, std::optional<std::vector<Name>> names,
                         std::size_t matches) {
  auto& q = *queries_.at(qid);
  if (!names) {
    q.result.complete = false;
  } else {
    if (matches == 0) q.result.false_positives.insert(dbsid);
    q.to_fetch.insert(q.to_fetch.end(), names->begin(), names->end());
  }
  if (--q.outstanding_sites == 0) q.names_done = loop_.now();
  pump_fetches(qid);
  maybe_finish(qid);
}

void Site::pump_fetches(std::uint64_t qid) {
  auto& q = *queries_.at(qid);
  while (q.in_flight < config_.fetch_parallelism && q.next_fetch < q.to_fetch.size()) {
    auto name = q.to_fetch[q.next_fetch++];
    ++q.in_flight;
    ++counters_.ointerests_sent;
    fetch(name, name, false, name[0], [this, qid, name](std::optional<icn::Bytes> content) {
      auto& query = *queries_.at(qid);
      --query.in_flight;
      std::optional<store::SpatialObject> obj;
      if (content) {
        try {
          obj = store::object_from_geojson(icn::to_string(*content));
        } catch (const std::exception&) {
        }
      }
      if (obj && obj->oname == name) {
        query.objects.insert_or_assign(name.to_string(), std::move(*obj));
      } else {
        ++query.result.between_phase_misses;
        ++counters_.between_phase_misses;
      }
      pump_fetches(qid);
      maybe_finish(qid);
    });
  }
}

void Site::maybe_finish(std::uint64_t qid) {
  auto& q = *queries_.at(qid);
  if (q.outstanding_sites == 0 && q.in_flight == 0 && q.next_fetch == q.to_fetch.size()) finish(qid);
}

void Site::finish(std::uint64_t qid) {
  auto it = queries_.find(qid);
  if (it == queries_.end()) return;
  auto q = std::move(it->second);
  queries_.erase(it);
  if (q->release) q->release();
  auto& r = q->result;
  auto now = loop_.now();
  r.resolved = now;
  if (!r.rejected) {
    for (auto& [_, obj] : q->objects) r.objects.push_back(std::move(obj));
    if (config_.strict && r.between_phase_misses > 0) r.complete = false;
    r.fetch_names_ms = to_ms(q->names_done - r.submitted);
    r.fetch_objects_ms = to_ms(now - q->names_done);
    ++counters_.queries_resolved;
    if (!r.complete) ++counters_.queries_incomplete;
  }
  if (q->done) q->done(r);
}

}  // namespace icnfed::fed
