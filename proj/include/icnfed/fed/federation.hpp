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
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "icnfed/fed/site.hpp"
#include "icnfed/icn/security.hpp"
#include "icnfed/sim/event_loop.hpp"
#include "icnfed/sim/network.hpp"

namespace icnfed::fed {

struct FederationConfig {
  /// Link between each site and the provider node.
  sim::LinkParams access_link;
  icn::ForwarderConfig site_forwarder;
  icn::ForwarderConfig provider_forwarder;
  std::string anchor_secret = "icnfed-trust-anchor";
  std::uint64_t seed = 1;
};

/// Key locator of a site's signing key: `{dbsid}/KEY`.
Name site_key_locator(std::string_view dbsid);

/// A federation of sites star-connected to one provider ICN node, with the
/// trust anchor that certifies their keys.
class Federation {
 public:
  explicit Federation(FederationConfig config = {});
  Federation(const Federation&) = delete;
  Federation& operator=(const Federation&) = delete;

  sim::EventLoop& loop() noexcept { return loop_; }
  sim::Network& network() noexcept { return net_; }
  const icn::TrustAnchor& anchor() const noexcept { return anchor_; }
  const icn::KeyRegistry& registry() const noexcept { return registry_; }
  sim::NodeId provider() const noexcept { return provider_; }
  const FederationConfig& config() const noexcept { return config_; }

  /// Issues credentials from the trust anchor and joins.
  Site& add_site(SiteConfig config);

  /// Joining procedure: the certificate must validate against the anchor and
  /// match the signer, and the signed prefix announcement must verify.
  /// Throws InvalidArgument otherwise, leaving every FIB untouched. Joining
  /// again with a known dbsid re-announces its prefixes, which is idempotent.
  Site& join(SiteConfig config, icn::Signer signer, const icn::Certificate& cert);

  Site& site(std::string_view dbsid);
  const Site& site(std::string_view dbsid) const;
  bool contains(std::string_view dbsid) const { return index_.contains(std::string(dbsid)); }
  std::size_t size() const noexcept { return sites_.size(); }
  /// In join order.
  std::vector<Site*> sites();
  std::vector<std::string> dbsids() const;

  void set_caching(bool on);
  /// Starts the index processors of all sites.
  void start();

  std::uint64_t rejected_joins() const noexcept { return rejected_joins_; }

 private:
  void announce(const Site& site);

  FederationConfig config_;
  sim::EventLoop loop_;
  icn::TrustAnchor anchor_;
  icn::KeyRegistry registry_;
  sim::Network net_;
  sim::NodeId provider_;
  std::vector<std::unique_ptr<Site>> sites_;
  std::map<std::string, std::size_t> index_;
  std::uint64_t rejected_joins_ = 0;
};

}  // namespace icnfed::fed
