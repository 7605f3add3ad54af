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
#include <string>
#include <vector>

#include "icnfed/common/time.hpp"
#include "icnfed/icn/content_store.hpp"
#include "icnfed/icn/fib.hpp"
#include "icnfed/icn/packet.hpp"
#include "icnfed/icn/pit.hpp"
#include "icnfed/icn/security.hpp"

namespace icnfed::icn {

struct ForwarderConfig {
  std::size_t cs_capacity = 256000;
  bool caching = true;
  bool verify_signatures = true;
};

struct ForwarderCounters {
  std::uint64_t interests_in = 0;
  std::uint64_t data_in = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t data_sent = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t aggregated = 0;
  std::uint64_t drop_no_route = 0;
  std::uint64_t drop_duplicate = 0;
  std::uint64_t drop_bad_signature = 0;
  std::uint64_t drop_unsolicited = 0;
};

struct Transmission {
  FaceId face;
  Packet packet;
};

/// One ICN node: FIB, PIT and content store. Each call applies one packet
/// arrival and returns the packets to emit; the caller owns the faces.
class Forwarder {
 public:
  /// `registry` may be null only when signature verification is disabled.
  Forwarder(ForwarderConfig config, const KeyRegistry* registry);

  std::vector<Transmission> on_interest(FaceId in, const InterestPtr& interest, SimTime now);
  std::vector<Transmission> on_data(FaceId in, const DataPtr& data, SimTime now);

  Fib& fib() noexcept { return fib_; }
  const Fib& fib() const noexcept { return fib_; }
  Pit& pit() noexcept { return pit_; }
  ContentStore& content_store() noexcept { return cs_; }
  const ContentStore& content_store() const noexcept { return cs_; }
  const ForwarderCounters& counters() const noexcept { return counters_; }
  const ForwarderConfig& config() const noexcept { return config_; }
  void set_caching(bool on) noexcept { config_.caching = on; }

 private:
  ForwarderConfig config_;
  const KeyRegistry* registry_;
  Fib fib_;
  Pit pit_;
  ContentStore cs_;
  ForwarderCounters counters_;
};

}  // namespace icnfed::icn
