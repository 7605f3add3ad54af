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

#include "icnfed/icn/forwarder.hpp"

#include <algorithm>

#include "icnfed/common/error.hpp"

namespace icnfed::icn {

Forwarder::Forwarder(ForwarderConfig config, const KeyRegistry* registry)
    : config_(config), registry_(registry), cs_(config.cs_capacity) {
  if (config_.verify_signatures && !registry_) {
    throw InvalidArgument("signature verification needs a key registry");
  }
}

std::vector<Transmission> Forwarder::on_interest(FaceId in, const InterestPtr& interest, SimTime now) {
  ++counters_.interests_in;
  pit_.purge(now);
  std::vector<Transmission> out;
  const auto& name = interest->name;

  if (pit_.is_dead_nonce(name, interest->nonce, now)) {
    ++counters_.drop_duplicate;
    return out;
  }
  if (config_.caching) {
    if (auto hit = cs_.find(name, now)) {
      ++counters_.cache_hits;
      ++counters_.data_sent;
      out.push_back({in, hit});
      return out;
    }
  }
  if (auto* entry = pit_.find(name, now)) {
    if (std::find(entry->nonces.begin(), entry->nonces.end(), interest->nonce) != entry->nonces.end()) {
      ++counters_.drop_duplicate;
      return out;
    }
    entry->downstream.insert(in);
    entry->nonces.push_back(interest->nonce);
    ++counters_.aggregated;
    return out;
  }

  const auto* route = fib_.lpm(name);
  if (route) {
    if (route->multicast) {
      for (const auto& [face, cost] : route->upstreams)
        if (face != in) out.push_back({face, interest});
    } else if (auto face = route->best_face(in)) {
      out.push_back({*face, interest});
    }
  }
  if (out.empty()) {
    ++counters_.drop_no_route;
    return out;
  }
  auto& entry = pit_.create(name, now + interest->lifetime_ms * kMillisecond);
  entry.downstream.insert(in);
  entry.nonces.push_back(interest->nonce);
  counters_.interests_sent += out.size();
  return out;
}

std::vector<Transmission> Forwarder::on_data(FaceId in, const DataPtr& data, SimTime now) {
  ++counters_.data_in;
  std::vector<Transmission> out;
  if (config_.verify_signatures && !verify(*data, *registry_)) {
    ++counters_.drop_bad_signature;
    return out;
  }
  auto* entry = pit_.find(data->name, now);
  if (!entry) {
    ++counters_.drop_unsolicited;
    return out;
  }
  for (auto face : entry->downstream)
    if (face != in) out.push_back({face, data});
  pit_.consume(data->name, now);
  if (config_.caching) cs_.insert(data, now);
  counters_.data_sent += out.size();
  return out;
}

}  // namespace icnfed::icn
