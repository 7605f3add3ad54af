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

#include "icnfed/sim/event_loop.hpp"

#include "icnfed/common/error.hpp"

namespace icnfed::sim {

EventId EventLoop::schedule_at(SimTime t, Callback cb) {
  if (t < now_) throw InvalidArgument("event scheduled in the past");
  auto id = next_id_++;
  live_.insert(id);
  queue_.push(Event{t, id, std::move(cb)});
  return id;
}

void EventLoop::cancel(EventId id) {
  if (live_.erase(id)) cancelled_.insert(id);
}

bool EventLoop::step() {
  while (!queue_.empty()) {
    // priority_queue::top is const; the callback is moved out before pop.
    auto& top = const_cast<Event&>(queue_.top());
    auto id = top.id;
    auto time = top.time;
    auto cb = std::move(top.cb);
    queue_.pop();
    if (cancelled_.erase(id)) continue;
    live_.erase(id);
    now_ = time;
    ++processed_;
    cb();
    return true;
  }
  return false;
}

void EventLoop::run() {
  while (step()) {
  }
}

void EventLoop::run_until(SimTime t) {
  while (!queue_.empty()) {
    const auto& top = queue_.top();
    if (top.time > t) break;
    if (cancelled_.contains(top.id)) {
      cancelled_.erase(top.id);
      queue_.pop();
      continue;
    }
    step();
  }
  if (t > now_) now_ = t;
}

}  // namespace icnfed::sim
