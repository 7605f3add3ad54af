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

#include "icnfed/fed/federation.hpp"

#include "icnfed/common/error.hpp"
#include "icnfed/index/global_index.hpp"

namespace icnfed::fed {

Name site_key_locator(std::string_view dbsid) { return Name{std::string(dbsid), "KEY"}; }

Federation::Federation(FederationConfig config)
    : config_(std::move(config)),
      anchor_(icn::to_bytes(config_.anchor_secret)),
      registry_(anchor_.verification_key()),
      net_(loop_, &registry_),
      provider_(net_.add_node("provider", config_.provider_forwarder)) {}

Site& Federation::add_site(SiteConfig config) {
  auto [signer, cert] = anchor_.issue(site_key_locator(config.dbsid));
  return join(std::move(config), std::move(signer), cert);
}

Site& Federation::join(SiteConfig config, icn::Signer signer, const icn::Certificate& cert) {
  auto reject = [this](const std::string& why) -> Site& {
    ++rejected_joins_;
    throw InvalidArgument("join rejected: " + why);
  };
  if (!registry_.validates(cert)) return reject("certificate does not validate against the trust anchor");
  if (cert.key_locator != site_key_locator(config.dbsid) || cert.key_locator != signer.key_locator() ||
      cert.key != signer.key()) {
    return reject("certificate does not belong to " + config.dbsid);
  }

  // The prefix announcement is signed by the joining site and checked against
  // its certificate before any route is installed.
  icn::KeyRegistry check(anchor_.verification_key());
  check.add(cert);
  std::string prefixes = config.dbsid + "\n" + index::index_data_prefix(config.dbsid).to_string() + "\n" +
                         index::notify_prefix().to_string();
  icn::DataPacket announcement{Name{config.dbsid, "announce"}, icn::to_bytes(prefixes), 0, {}};
  icn::sign(announcement, signer);
  if (!icn::verify(announcement, check)) return reject("announcement signature does not verify");

  registry_.add(cert);
  if (auto it = index_.find(config.dbsid); it != index_.end()) {
    auto& existing = *sites_[it->second];
    announce(existing);
    return existing;
  }

  auto node = net_.add_node(config.dbsid, config_.site_forwarder);
  net_.connect(node, provider_, config_.access_link);
  auto seed = config_.seed * 0x9E3779B97F4A7C15ULL + sites_.size() + 1;
  index_.emplace(config.dbsid, sites_.size());
  sites_.push_back(std::make_unique<Site>(std::move(config), std::move(signer), net_, node, registry_, seed));

  // Routes toward earlier members were installed before this node existed.
  for (const auto& s : sites_) announce(*s);
  auto members = dbsids();
  for (auto& s : sites_) s->set_members(members);
  return *sites_.back();
}

void Federation::announce(const Site& site) {
  net_.announce(Name{site.dbsid()}, site.node());
  net_.announce(index::index_data_prefix(site.dbsid()), site.node());
  net_.join_multicast(index::notify_prefix(), site.node());
}

Site& Federation::site(std::string_view dbsid) {
  auto it = index_.find(std::string(dbsid));
  if (it == index_.end()) throw NotFound("no site " + std::string(dbsid));
  return *sites_[it->second];
}

const Site& Federation::site(std::string_view dbsid) const {
  auto it = index_.find(std::string(dbsid));
  if (it == index_.end()) throw NotFound("no site " + std::string(dbsid));
  return *sites_[it->second];
}

std::vector<Site*> Federation::sites() {
  std::vector<Site*> out;
  for (auto& s : sites_) out.push_back(s.get());
  return out;
}

std::vector<std::string> Federation::dbsids() const {
  std::vector<std::string> out;
  for (const auto& s : sites_) out.push_back(s->dbsid());
  return out;
}

void Federation::set_caching(bool on) {
  for (sim::NodeId n = 0; n < net_.node_count(); ++n) net_.forwarder(n).set_caching(on);
}

void Federation::start() {
  for (auto& s : sites_) s->start();
}

}  // namespace icnfed::fed
