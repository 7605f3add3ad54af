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
#include <queue>
#include <unordered_set>
#include <vector>

#include "icnfed/common/time.hpp"

namespace icnfed::sim {

using EventId = std::uint64_t;

/// Single-threaded discrete-event loop. Events run in (time, insertion order)
/// order, so a run is a pure function of the scheduled callbacks.
class EventLoop {
 public:
  using Callback = std::function<void()>;

  SimTime now() const noexcept { return now_; }

  /// Throws InvalidArgument for times in the past.
  EventId schedule_at(SimTime t, Callback cb);
  EventId schedule_after(SimTime delay, Callback cb) { return schedule_at(now_ + delay, std::move(cb)); }
  /// Cancelling an event that already ran or was cancelled is a no-op.
  void cancel(EventId id);

  /// Runs one event; false when none is left.
  bool step();
  void run();
  /// Runs every event with time <= t, then advances the clock to t.
  void run_until(SimTime t);
  /// Runs until `done()` holds (checked after each event) or events run out.
  template <typename Pred>
  void run_while_not(Pred&& done) {
    while (!done() && step()) {
    }
  }

  std::size_t pending() const noexcept { return live_.size(); }
  std::uint64_t processed() const noexcept { return processed_; }

 private:
  struct Event {
    SimTime time;
    EventId id;
    Callback cb;
    bool operator>(const Event& o) const { return time != o.time ? time > o.time : id > o.id; }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::unordered_set<EventId> live_;
  std::unordered_set<EventId> cancelled_;
  SimTime now_ = 0;
  EventId next_id_ = 0;
  std::uint64_t processed_ = 0;
};

}  // namespace icnfed::sim
