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

#include <optional>
#include <vector>

namespace icnfed::harness {

inline constexpr std::size_t kMinStabilitySamples = 200;

struct StabilityConfig {
  double trailing_fraction = 0.8;
  /// Slope threshold in ms per query; unset means mean / sample count.
  std::optional<double> theta;
};

struct StabilityVerdict {
  bool stable = true;
  double slope = 0;      // ms per query
  double threshold = 0;  // ms per query
  double mean = 0;
};

/// Least-squares slope of response time against query index over the
/// trailing window. Throws InvalidArgument below kMinStabilitySamples.
StabilityVerdict stability_test(const std::vector<double>& response_ms, const StabilityConfig& config = {});

}  // namespace icnfed::harness
