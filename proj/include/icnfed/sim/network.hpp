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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "icnfed/icn/forwarder.hpp"
#include "icnfed/sim/event_loop.hpp"

namespace icnfed::sim {

using NodeId = std::uint32_t;

/// Face 0 of every node is its local application.
inline constexpr icn::FaceId kAppFace = 0;

struct LinkParams {
  double latency_ms = 5.0;
  /// Bytes per millisecond; 0 means no serialisation delay.
  double bandwidth_bytes_per_ms = 12500.0;
};

struct LinkStats {
  std::uint64_t packets = 0;
  std::uint64_t bytes = 0;
  std::uint64_t interests = 0;
  std::uint64_t data = 0;
};

struct Link {
  NodeId a = 0, b = 0;
  icn::FaceId face_a = 0, face_b = 0;
  LinkParams params;
  std::array<SimTime, 2> busy_until{0, 0};  // [0]: a->b, [1]: b->a
  std::array<LinkStats, 2> stats{};
};

/// Nodes running a forwarder, joined by point-to-point links with latency and
/// FIFO serialisation delay, plus a static shortest-path routing oracle.
class Network {
 public:
  using AppHandler = std::function<void(const icn::Packet&)>;
  /// Called for every packet put on a link; returns the packet to deliver.
  using Tamper = std::function<icn::Packet(std::size_t link, int direction, const icn::Packet&)>;

  Network(EventLoop& loop, const icn::KeyRegistry* registry);

  NodeId add_node(std::string name, icn::ForwarderConfig config);
  /// Returns the link index. Invalidates cached routes.
  std::size_t connect(NodeId a, NodeId b, LinkParams params);
  void set_app(NodeId node, AppHandler handler);
  void set_tamper(Tamper tamper) { tamper_ = std::move(tamper); }

  /// Hands a packet from a node's application to its forwarder. Processing
  /// happens in a separate event at the current time, never re-entrantly.
  void send(NodeId node, icn::Packet packet);

  icn::Forwarder& forwarder(NodeId node) { return *nodes_.at(node).forwarder; }
  const icn::Forwarder& forwarder(NodeId node) const { return *nodes_.at(node).forwarder; }
  const std::string& name(NodeId node) const { return nodes_.at(node).name; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<Link>& links() const noexcept { return links_; }
  EventLoop& loop() noexcept { return loop_; }

  /// Routing oracle: installs `prefix` at every node toward `origin`, with
  /// the path latency (us) as cost; `origin` itself routes to its app face.
  void announce(const Name& prefix, NodeId origin);
  /// Adds `member` to the multicast group of `prefix` and rewrites that
  /// prefix's FIB entry on every node.
  void join_multicast(const Name& prefix, NodeId member);

  /// Path latency in microseconds; throws NotFound if unreachable.
  SimTime distance(NodeId from, NodeId to);
  icn::FaceId first_hop(NodeId from, NodeId to);

  std::uint64_t app_deliveries() const noexcept { return app_deliveries_; }

 private:
  struct FaceBinding {
    std::size_t link;
    int direction;  // direction of traffic leaving through this face
  };
  struct Node {
    std::string name;
    std::unique_ptr<icn::Forwarder> forwarder;
    std::vector<FaceBinding> faces;  // index = face id - 1
    AppHandler app;
  };
  struct Routes {
    std::vector<SimTime> dist;
    std::vector<icn::FaceId> first_face;
  };

  void deliver(NodeId node, icn::FaceId face, const icn::Packet& packet);
  void emit(NodeId node, std::vector<icn::Transmission> out);
  void transmit(NodeId node, icn::FaceId face, const icn::Packet& packet);
  const Routes& routes_from(NodeId node);

  EventLoop& loop_;
  const icn::KeyRegistry* registry_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::map<NodeId, Routes> routes_;
  std::map<Name, std::set<NodeId>> groups_;
  Tamper tamper_;
  std::uint64_t app_deliveries_ = 0;
};

}  // namespace icnfed::sim
