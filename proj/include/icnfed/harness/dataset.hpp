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

#include "icnfed/geo/grid.hpp"
#include "icnfed/store/ingest.hpp"

namespace icnfed::harness {

/// Lon/lat box used for synthetic data and query centres.
struct BBox {
  double lon_min = -10, lat_min = 35, lon_max = 40, lat_max = 70;
  Rect rect() const { return Rect(Point(lon_min, lat_min), Point(lon_max, lat_max)); }
};

/// Clustered synthetic POIs around European cities. Each feature carries a
/// `region` (ISO country code of its city) and a `type` property.
std::vector<store::Feature> synth_pois(std::size_t count, std::uint64_t seed, const BBox& box = {});

enum class Locality { Random, Region };
Locality parse_locality(std::string_view text);
std::string_view to_string(Locality l);

struct Assignment {
  /// Feature indices per site, ascending.
  std::vector<std::vector<std::size_t>> sites;
  std::size_t rejected = 0;
};

/// Each feature goes to a uniformly drawn site.
Assignment assign_random(const std::vector<store::Feature>& features, std::size_t sites, std::uint64_t seed);

/// Whole regions go to sites, largest region first into the least-loaded
/// site (lowest index on ties). Features without a region are rejected.
Assignment assign_regions(const std::vector<store::Feature>& features, std::size_t sites);

struct RegionSize {
  std::string region;
  std::size_t size;
};
/// The packing used by assign_regions: region names per site.
std::vector<std::vector<std::string>> pack_regions(std::vector<RegionSize> regions, std::size_t sites);

Assignment assign(const std::vector<store::Feature>& features, std::size_t sites, Locality locality,
                  std::uint64_t seed);

}  // namespace icnfed::harness
