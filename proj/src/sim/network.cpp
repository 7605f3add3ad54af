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

#include "icnfed/sim/network.hpp"

#include <limits>
#include <queue>

#include "icnfed/common/error.hpp"

namespace icnfed::sim {

Network::Network(EventLoop& loop, const icn::KeyRegistry* registry) : loop_(loop), registry_(registry) {}

NodeId Network::add_node(std::string name, icn::ForwarderConfig config) {
  nodes_.push_back(Node{std::move(name), std::make_unique<icn::Forwarder>(config, registry_), {}, {}});
  routes_.clear();
  return static_cast<NodeId>(nodes_.size() - 1);
}

std::size_t Network::connect(NodeId a, NodeId b, LinkParams params) {
  if (a == b || a >= nodes_.size() || b >= nodes_.size()) throw InvalidArgument("bad link endpoints");
  if (params.latency_ms <= 0) throw InvalidArgument("link latency must be positive");
  auto idx = links_.size();
  Link link;
  link.a = a;
  link.b = b;
  link.params = params;
  nodes_[a].faces.push_back({idx, 0});
  link.face_a = static_cast<icn::FaceId>(nodes_[a].faces.size());
  nodes_[b].faces.push_back({idx, 1});
  link.face_b = static_cast<icn::FaceId>(nodes_[b].faces.size());
  links_.push_back(link);
  routes_.clear();
  return idx;
}

void Network::set_app(NodeId node, AppHandler handler) { nodes_.at(node).app = std::move(handler); }

void Network::send(NodeId node, icn::Packet packet) {
  loop_.schedule_at(loop_.now(), [this, node, packet = std::move(packet)] { deliver(node, kAppFace, packet); });
}

void Network::deliver(NodeId node, icn::FaceId face, const icn::Packet& packet) {
  auto& fwd = *nodes_[node].forwarder;
  auto now = loop_.now();
  if (const auto* i = std::get_if<icn::InterestPtr>(&packet)) {
    emit(node, fwd.on_interest(face, *i, now));
  } else {
    emit(node, fwd.on_data(face, std::get<icn::DataPtr>(packet), now));
  }
}

void Network::emit(NodeId node, std::vector<icn::Transmission> out) {
  for (auto& t : out) {
    if (t.face == kAppFace) {
      ++app_deliveries_;
      if (nodes_[node].app) nodes_[node].app(t.packet);
    } else {
      transmit(node, t.face, t.packet);
    }
  }
}

void Network::transmit(NodeId node, icn::FaceId face, const icn::Packet& packet) {
  const auto& binding = nodes_[node].faces.at(face - 1);
  auto& link = links_[binding.link];
  auto dir = static_cast<std::size_t>(binding.direction);
  auto p = tamper_ ? tamper_(binding.link, binding.direction, packet) : packet;
  auto size = icn::wire_size(p);

  auto depart = std::max(loop_.now(), link.busy_until[dir]);
  auto tx = link.params.bandwidth_bytes_per_ms > 0
                ? from_ms(static_cast<double>(size) / link.params.bandwidth_bytes_per_ms)
                : SimTime{0};
  link.busy_until[dir] = depart + tx;
  auto arrival = link.busy_until[dir] + from_ms(link.params.latency_ms);

  auto& stats = link.stats[dir];
  ++stats.packets;
  stats.bytes += size;
  if (std::holds_alternative<icn::InterestPtr>(p)) ++stats.interests; else ++stats.data;

  NodeId peer = dir == 0 ? link.b : link.a;
  icn::FaceId peer_face = dir == 0 ? link.face_b : link.face_a;
  loop_.schedule_at(arrival, [this, peer, peer_face, p = std::move(p)] { deliver(peer, peer_face, p); });
}

const Network::Routes& Network::routes_from(NodeId src) {
  auto it = routes_.find(src);
  if (it != routes_.end()) return it->second;
  constexpr auto kInf = std::numeric_limits<SimTime>::max();
  Routes r{std::vector<SimTime>(nodes_.size(), kInf), std::vector<icn::FaceId>(nodes_.size(), 0)};
  using Item = std::pair<SimTime, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  r.dist[src] = 0;
  pq.emplace(0, src);
  while (!pq.empty()) {
    auto [d, n] = pq.top();
    pq.pop();
    if (d > r.dist[n]) continue;
    for (std::size_t f = 0; f < nodes_[n].faces.size(); ++f) {
      const auto& link = links_[nodes_[n].faces[f].link];
      NodeId peer = link.a == n ? link.b : link.a;
      auto nd = d + from_ms(link.params.latency_ms);
      // Ties keep the first-found path, which depends only on link order.
      if (nd < r.dist[peer]) {
        r.dist[peer] = nd;
        r.first_face[peer] = n == src ? static_cast<icn::FaceId>(f + 1) : r.first_face[n];
        pq.emplace(nd, peer);
      }
    }
  }
  return routes_.emplace(src, std::move(r)).first->second;
}

SimTime Network::distance(NodeId from, NodeId to) {
  auto d = routes_from(from).dist.at(to);
  if (d == std::numeric_limits<SimTime>::max()) throw NotFound("no path between nodes");
  return d;
}

icn::FaceId Network::first_hop(NodeId from, NodeId to) {
  if (from == to) return kAppFace;
  distance(from, to);
  return routes_from(from).first_face.at(to);
}

void Network::announce(const Name& prefix, NodeId origin) {
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (n == origin) {
      nodes_[n].forwarder->fib().add_next_hop(prefix, kAppFace, 0);
    } else if (routes_from(n).dist[origin] != std::numeric_limits<SimTime>::max()) {
      nodes_[n].forwarder->fib().add_next_hop(prefix, first_hop(n, origin), distance(n, origin));
    }
  }
}

void Network::join_multicast(const Name& prefix, NodeId member) {
  auto& group = groups_[prefix];
  group.insert(member);
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    auto& fib = nodes_[n].forwarder->fib();
    fib.erase(prefix);
    for (auto m : group) {
      if (m == n) {
        fib.add_next_hop(prefix, kAppFace, 0, true);
      } else if (routes_from(n).dist[m] != std::numeric_limits<SimTime>::max()) {
        auto face = first_hop(n, m);
        // A face shared by several members keeps the cheapest cost.
        const auto* existing = fib.find(prefix);
        auto cost = distance(n, m);
        if (existing && existing->upstreams.contains(face)) cost = std::min(cost, existing->upstreams.at(face));
        fib.add_next_hop(prefix, face, cost, true);
      }
    }
  }
}

}  // namespace icnfed::sim
