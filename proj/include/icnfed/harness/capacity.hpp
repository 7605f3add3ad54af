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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "icnfed/harness/scenario.hpp"

namespace icnfed::harness {

struct Probe {
  double rate = 0;
  bool stable = false;
  double mean_response_ms = 0;
  std::size_t rejected = 0;
  std::size_t timed_out = 0;
};

struct CapacityResult {
  double rate = 0;
  std::vector<Probe> probes;
};

/// Runs `config.trials` trials (workload seeds seed, seed+1, ...) at `rate`.
/// Stable iff the element-wise mean response series passes the trend test
/// and no trial rejected or timed out a query.
Probe probe_rate(const ScenarioConfig& config, double rate, const std::vector<store::Feature>& features);

/// Highest stable rate: doubling from capacity_min_rate until unstable, then
/// geometric bisection down to capacity_resolution. Throws Error when the
/// minimum rate is already unstable.
CapacityResult find_max_rate(const ScenarioConfig& config);

/// Axis name -> values, applied with ScenarioConfig::set.
using SweepAxes = std::map<std::string, std::vector<std::string>>;

/// One CSV row per combination: the axis values then either the capacity
/// (`max_rate`) or the trial summary at the configured rate.
void sweep(const ScenarioConfig& base, const SweepAxes& axes, bool capacity, std::ostream& out);

}  // namespace icnfed::harness
