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
#include <deque>
#include <functional>

#include "icnfed/sim/event_loop.hpp"

namespace icnfed::sim {

/// c parallel servers in front of a bounded FIFO queue.
class ServerPool {
 public:
  struct Job {
    /// Runs when a server picks the job up; returns the service time.
    std::function<SimTime()> start;
    /// Runs when service completes.
    std::function<void()> finish;
  };

  /// Frees the server taken by a held job; calls after the first are no-ops.
  using Release = std::function<void()>;
  /// A job that occupies its server until it calls the release handle.
  using HeldJob = std::function<void(Release)>;

  ServerPool(EventLoop& loop, int servers, std::size_t queue_capacity);

  /// False (and the job is discarded) when every server is busy and the
  /// queue is full.
  bool submit(Job job);
  bool submit_held(HeldJob job);

  int busy() const noexcept { return busy_; }
  std::size_t queued() const noexcept { return queue_.size(); }
  std::uint64_t submitted() const noexcept { return submitted_; }
  std::uint64_t rejected() const noexcept { return rejected_; }
  std::uint64_t completed() const noexcept { return completed_; }
  std::size_t max_queued() const noexcept { return max_queued_; }
  /// Total server-busy time, for utilisation.
  SimTime busy_time() const noexcept { return busy_time_; }

 private:
  struct Entry {
    Job job;
    HeldJob held;
  };
  bool enqueue(Entry e);
  void run(Entry e);
  void release_server(SimTime started);

  EventLoop& loop_;
  int servers_;
  std::size_t capacity_;
  int busy_ = 0;
  std::deque<Entry> queue_;
  std::uint64_t submitted_ = 0, rejected_ = 0, completed_ = 0;
  std::size_t max_queued_ = 0;
  SimTime busy_time_ = 0;
};

}  // namespace icnfed::sim
