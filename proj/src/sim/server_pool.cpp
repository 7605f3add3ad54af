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

#include "icnfed/sim/server_pool.hpp"

#include <memory>

#include "icnfed/common/error.hpp"

namespace icnfed::sim {

ServerPool::ServerPool(EventLoop& loop, int servers, std::size_t queue_capacity)
    : loop_(loop), servers_(servers), capacity_(queue_capacity) {
  if (servers_ < 1) throw InvalidArgument("server pool needs at least one server");
}

bool ServerPool::submit(Job job) { return enqueue(Entry{std::move(job), {}}); }

bool ServerPool::submit_held(HeldJob job) { return enqueue(Entry{{}, std::move(job)}); }

bool ServerPool::enqueue(Entry e) {
  ++submitted_;
  if (busy_ < servers_) {
    run(std::move(e));
    return true;
  }
  if (queue_.size() >= capacity_) {
    ++rejected_;
    return false;
  }
  queue_.push_back(std::move(e));
  max_queued_ = std::max(max_queued_, queue_.size());
  return true;
}

void ServerPool::release_server(SimTime started) {
  --busy_;
  ++completed_;
  busy_time_ += loop_.now() - started;
  // Hand the server to the queue head before any completion callback can
  // submit more work.
  if (!queue_.empty()) {
    auto next = std::move(queue_.front());
    queue_.pop_front();
    run(std::move(next));
  }
}

void ServerPool::run(Entry e) {
  ++busy_;
  auto started = loop_.now();
  if (e.held) {
    auto released = std::make_shared<bool>(false);
    e.held([this, released, started] {
      if (*released) return;
      *released = true;
      release_server(started);
    });
    return;
  }
  auto service = e.job.start ? e.job.start() : SimTime{0};
  loop_.schedule_after(service, [this, started, finish = std::move(e.job.finish)] {
    release_server(started);
    if (finish) finish();
  });
}

}  // namespace icnfed::sim
