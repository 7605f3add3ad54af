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

#include "icnfed/harness/workload.hpp"

#include <algorithm>
#include <cmath>

#include "icnfed/common/error.hpp"
#include "icnfed/harness/random.hpp"

namespace icnfed::harness {

Rect square_area(Point center, double area_km2) {
  if (!(area_km2 > 0)) throw InvalidArgument("query area must be positive");
  double side_km = std::sqrt(area_km2);
  double dlat = side_km / kKmPerDegree;
  double dlon = side_km / (kKmPerDegree * std::cos(center.lat() * M_PI / 180.0));
  double x0 = std::max(-180.0, center.lon() - dlon / 2), x1 = std::min(180.0, center.lon() + dlon / 2);
  double y0 = std::max(-90.0, center.lat() - dlat / 2), y1 = std::min(90.0, center.lat() + dlat / 2);
  return Rect(Point(x0, y0), Point(x1, y1));
}

std::vector<QueryEvent> generate_workload(const WorkloadConfig& config, std::size_t sites,
                                          const std::vector<store::Feature>* features) {
  if (sites == 0) throw InvalidArgument("need at least one site");
  if (!(config.rate > 0)) throw InvalidArgument("query rate must be positive");
  if (!(config.data_centred >= 0 && config.data_centred <= 1)) throw InvalidArgument("data_centred must be in [0, 1]");
  if (config.data_centred > 0 && (!features || features->empty()))
    throw InvalidArgument("data-centred queries need a dataset");
  auto centres = make_stream(config.seed, 0x4345);
  auto arrivals = make_stream(config.seed, 0x4152);
  auto origins = make_stream(config.seed, 0x4f52);
  auto picks = make_stream(config.seed, 0x5049);
  std::vector<QueryEvent> out;
  out.reserve(config.trial_length);
  double t_s = 0;
  for (std::size_t i = 0; i < config.trial_length; ++i) {
    t_s += exponential(arrivals) / config.rate;
    Point c(uniform(centres, config.box.lon_min, config.box.lon_max),
            uniform(centres, config.box.lat_min, config.box.lat_max));
    if (config.data_centred > 0 && uniform01(picks) < config.data_centred) {
      auto box = store::mbr((*features)[uniform_index(picks, features->size())].geometry);
      c = Point((box.min().lon() + box.max().lon()) / 2, (box.min().lat() + box.max().lat()) / 2);
    }
    out.push_back(QueryEvent{i, static_cast<SimTime>(std::llround(t_s * 1e6)), uniform_index(origins, sites),
                             store::QueryStatement{config.did, square_area(c, config.area_km2), {}}});
  }
  return out;
}

}  // namespace icnfed::harness
