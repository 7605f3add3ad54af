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

#include "icnfed/common/time.hpp"
#include "icnfed/harness/dataset.hpp"
#include "icnfed/store/ingest.hpp"
#include "icnfed/store/query.hpp"

namespace icnfed::harness {

inline constexpr double kKmPerDegree = 111.32;

struct WorkloadConfig {
  std::size_t trial_length = 5000;
  double area_km2 = 100;
  double rate = 50;  // queries per second
  std::uint64_t seed = 1;
  BBox box;
  std::string did = "POI";
  /// Fraction of queries centred on a randomly drawn feature instead of a
  /// uniform point of the box.
  double data_centred = 0;
};

struct QueryEvent {
  std::size_t index;
  SimTime offset;  // since the start of the trial
  std::size_t site;
  store::QueryStatement stmt;
};

/// Square of `area_km2` centred at `center`, converted to degrees with the
/// cosine correction for longitude.
Rect square_area(Point center, double area_km2);

/// Query centres, sites and unit inter-arrival draws come from separate
/// streams, so two workloads differing only in rate or area share the same
/// centres and the same arrival pattern up to scale.
/// `features` is required when data_centred > 0.
std::vector<QueryEvent> generate_workload(const WorkloadConfig& config, std::size_t sites,
                                          const std::vector<store::Feature>* features = nullptr);

}  // namespace icnfed::harness
