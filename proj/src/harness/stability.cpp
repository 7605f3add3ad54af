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

#include "icnfed/harness/stability.hpp"

#include <numeric>
#include <string>

#include "icnfed/common/error.hpp"

namespace icnfed::harness {

StabilityVerdict stability_test(const std::vector<double>& response_ms, const StabilityConfig& config) {
  if (response_ms.size() < kMinStabilitySamples) {
    throw InvalidArgument("stability test needs at least " + std::to_string(kMinStabilitySamples) +
                          " samples, got " + std::to_string(response_ms.size()));
  }
  StabilityVerdict v;
  auto n = response_ms.size();
  v.mean = std::accumulate(response_ms.begin(), response_ms.end(), 0.0) / static_cast<double>(n);
  v.threshold = config.theta.value_or(v.mean / static_cast<double>(n));

  auto first = n - static_cast<std::size_t>(static_cast<double>(n) * config.trailing_fraction);
  double m = static_cast<double>(n - first);
  double sx = 0, sy = 0;
  for (auto i = first; i < n; ++i) {
    sx += static_cast<double>(i);
    sy += response_ms[i];
  }
  double mx = sx / m, my = sy / m, sxy = 0, sxx = 0;
  for (auto i = first; i < n; ++i) {
    double dx = static_cast<double>(i) - mx;
    sxy += dx * (response_ms[i] - my);
    sxx += dx * dx;
  }
  v.slope = sxx > 0 ? sxy / sxx : 0;
  v.stable = v.slope <= v.threshold;
  return v;
}

}  // namespace icnfed::harness
