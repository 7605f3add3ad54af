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

#include "icnfed/harness/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "icnfed/common/error.hpp"
#include "icnfed/harness/random.hpp"

namespace icnfed::harness {

namespace {

struct City {
  const char* region;
  double lon, lat;
  double weight;
};

// Weights roughly follow metropolitan population in millions.
constexpr City kCities[] = {
    {"GB", -0.13, 51.51, 9.0},  {"GB", -2.24, 53.48, 2.7}, {"GB", -4.25, 55.86, 1.7},
    {"IE", -6.26, 53.35, 1.4},  {"FR", 2.35, 48.86, 11.0}, {"FR", 5.37, 43.30, 1.8},
    {"FR", 4.84, 45.76, 2.3},   {"FR", 1.44, 43.60, 1.4},  {"ES", -3.70, 40.42, 6.7},
    {"ES", 2.17, 41.39, 5.6},   {"ES", -5.98, 37.39, 1.5}, {"ES", -0.38, 39.47, 1.6},
    {"PT", -9.14, 38.72, 2.9},  {"PT", -8.61, 41.15, 1.7}, {"IT", 12.50, 41.90, 4.3},
    {"IT", 9.19, 45.46, 4.3},   {"IT", 14.27, 40.85, 3.1}, {"IT", 7.69, 45.07, 1.7},
    {"DE", 13.40, 52.52, 4.5},  {"DE", 9.99, 53.55, 2.5},  {"DE", 11.58, 48.14, 2.6},
    {"DE", 6.96, 50.94, 2.1},   {"DE", 8.68, 50.11, 2.3},  {"NL", 4.90, 52.37, 2.5},
    {"BE", 4.35, 50.85, 2.1},   {"CH", 8.54, 47.37, 1.4},  {"AT", 16.37, 48.21, 1.9},
    {"CZ", 14.44, 50.08, 1.3},  {"PL", 21.01, 52.23, 1.8}, {"PL", 19.94, 50.06, 0.8},
    {"HU", 19.04, 47.50, 1.8},  {"DK", 12.57, 55.68, 1.3}, {"SE", 18.07, 59.33, 1.6},
    {"NO", 10.75, 59.91, 1.0},  {"FI", 24.94, 60.17, 1.2}, {"GR", 23.73, 37.98, 3.2},
    {"RO", 26.10, 44.43, 1.8},  {"BG", 23.32, 42.70, 1.3}, {"RS", 20.46, 44.79, 1.2},
    {"HR", 15.98, 45.81, 0.8},  {"UA", 30.52, 50.45, 3.0}, {"TR", 28.98, 41.01, 9.0},
    {"LT", 25.28, 54.69, 0.6},  {"LV", 24.11, 56.95, 0.6}, {"SK", 17.11, 48.15, 0.6},
};

constexpr const char* kTypes[] = {"hotel", "restaurant", "museum", "shop", "park", "station"};

}  // namespace

std::vector<store::Feature> synth_pois(std::size_t count, std::uint64_t seed, const BBox& box) {
  auto rng = make_stream(seed, 0x5054);
  std::vector<const City*> cities;
  double total = 0;
  for (const auto& c : kCities) {
    if (c.lon < box.lon_min || c.lon > box.lon_max || c.lat < box.lat_min || c.lat > box.lat_max) continue;
    cities.push_back(&c);
    total += c.weight;
  }
  if (cities.empty()) throw InvalidArgument("bounding box contains no city");

  std::vector<store::Feature> out;
  out.reserve(count);
  while (out.size() < count) {
    double pick = uniform01(rng) * total;
    const City* city = cities.back();
    for (const auto* c : cities) {
      if (pick < c->weight) {
        city = c;
        break;
      }
      pick -= c->weight;
    }
    // Most POIs sit in the urban core; a tail spreads over the surroundings.
    double sigma = uniform01(rng) < 0.7 ? 0.08 : 0.6;
    double lat = city->lat + sigma * normal(rng);
    double lon = city->lon + sigma * normal(rng) / std::cos(city->lat * M_PI / 180.0);
    if (lon < box.lon_min || lon >= box.lon_max || lat < box.lat_min || lat >= box.lat_max) continue;
    store::Properties props{{"region", city->region},
                            {"type", kTypes[uniform_index(rng, std::size(kTypes))]}};
    out.push_back(store::Feature{Point(lon, lat), std::move(props)});
  }
  return out;
}

Locality parse_locality(std::string_view text) {
  if (text == "random") return Locality::Random;
  if (text == "region") return Locality::Region;
  throw ParseError("unknown locality '" + std::string(text) + "'");
}

std::string_view to_string(Locality l) { return l == Locality::Random ? "random" : "region"; }

Assignment assign_random(const std::vector<store::Feature>& features, std::size_t sites, std::uint64_t seed) {
  if (sites == 0) throw InvalidArgument("need at least one site");
  auto rng = make_stream(seed, 0x4153);
  Assignment a;
  a.sites.resize(sites);
  for (std::size_t i = 0; i < features.size(); ++i) a.sites[uniform_index(rng, sites)].push_back(i);
  return a;
}

std::vector<std::vector<std::string>> pack_regions(std::vector<RegionSize> regions, std::size_t sites) {
  if (sites == 0) throw InvalidArgument("need at least one site");
  std::stable_sort(regions.begin(), regions.end(), [](const RegionSize& a, const RegionSize& b) {
    return a.size != b.size ? a.size > b.size : a.region < b.region;
  });
  std::vector<std::vector<std::string>> out(sites);
  std::vector<std::size_t> load(sites, 0);
  for (const auto& r : regions) {
    auto target = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    out[target].push_back(r.region);
    load[target] += r.size;
  }
  return out;
}

Assignment assign_regions(const std::vector<store::Feature>& features, std::size_t sites) {
  Assignment a;
  a.sites.resize(sites);
  std::map<std::string, std::vector<std::size_t>> by_region;
  for (std::size_t i = 0; i < features.size(); ++i) {
    auto it = features[i].properties.find("region");
    if (it == features[i].properties.end() || it->second.empty()) {
      ++a.rejected;
      continue;
    }
    by_region[it->second].push_back(i);
  }
  std::vector<RegionSize> sizes;
  for (const auto& [region, members] : by_region) sizes.push_back({region, members.size()});
  auto packing = pack_regions(std::move(sizes), sites);
  for (std::size_t s = 0; s < sites; ++s) {
    for (const auto& region : packing[s]) {
      const auto& members = by_region.at(region);
      a.sites[s].insert(a.sites[s].end(), members.begin(), members.end());
    }
    std::sort(a.sites[s].begin(), a.sites[s].end());
  }
  return a;
}

Assignment assign(const std::vector<store::Feature>& features, std::size_t sites, Locality locality,
                  std::uint64_t seed) {
  return locality == Locality::Random ? assign_random(features, sites, seed) : assign_regions(features, sites);
}

}  // namespace icnfed::harness
