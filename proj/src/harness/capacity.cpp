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

#include "icnfed/harness/capacity.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "icnfed/common/error.hpp"

namespace icnfed::harness {

Probe probe_rate(const ScenarioConfig& config, double rate, const std::vector<store::Feature>& features) {
  Probe p;
  p.rate = rate;
  std::vector<double> mean_series;
  std::size_t trials = std::max<std::size_t>(1, config.trials);
  double mean_sum = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto c = config;
    c.workload.rate = rate;
    c.workload.seed = config.workload.seed + t;
    auto m = run_trial(c, &features);
    p.rejected += m.rejected;
    p.timed_out += m.timed_out;
    mean_sum += m.mean_response_ms;
    if (mean_series.empty()) mean_series.assign(m.queries.size(), 0.0);
    for (std::size_t i = 0; i < m.queries.size(); ++i)
      mean_series[i] += (m.queries[i].resolve_ms - m.queries[i].submit_ms) / static_cast<double>(trials);
  }
  p.mean_response_ms = mean_sum / static_cast<double>(trials);
  bool trend_ok = mean_series.size() < kMinStabilitySamples || stability_test(mean_series, config.stability).stable;
  p.stable = trend_ok && p.rejected == 0 && p.timed_out == 0;
  return p;
}

CapacityResult find_max_rate(const ScenarioConfig& config) {
  auto features = load_features(config);
  CapacityResult out;
  auto probe = [&](double rate) {
    out.probes.push_back(probe_rate(config, rate, features));
    return out.probes.back().stable;
  };
  double lo = config.capacity_min_rate;
  if (!(lo > 0)) throw InvalidArgument("capacity_min_rate must be positive");
  if (!probe(lo)) throw Error("scenario is unstable even at the minimum rate " + std::to_string(lo));
  double hi = lo;
  while (true) {
    hi = std::min(hi * 2, config.capacity_max_rate);
    if (!probe(hi)) break;
    lo = hi;
    if (hi >= config.capacity_max_rate) {
      out.rate = lo;
      return out;
    }
  }
  while (hi / lo > 1 + config.capacity_resolution) {
    double mid = std::sqrt(lo * hi);
    (probe(mid) ? lo : hi) = mid;
  }
  out.rate = lo;
  return out;
}

void sweep(const ScenarioConfig& base, const SweepAxes& axes, bool capacity, std::ostream& out) {
  std::vector<std::string> names;
  for (const auto& [name, values] : axes) {
    if (values.empty()) throw InvalidArgument("sweep axis " + name + " has no values");
    base.get(name);  // rejects unknown keys before any run
    names.push_back(name);
  }
  for (const auto& n : names) out << n << ',';
  out << (capacity ? "max_rate,probes\n" : "mean_response_ms,ci95_ms,stable,false_positives,cache_hits,tiles,announcement_bytes,query_ratio\n");

  std::vector<std::size_t> pos(names.size(), 0);
  while (true) {
    auto c = base;
    for (std::size_t i = 0; i < names.size(); ++i) c.set(names[i], axes.at(names[i])[pos[i]]);
    for (const auto& n : names) out << c.get(n) << ',';
    if (capacity) {
      auto r = find_max_rate(c);
      out << r.rate << ',' << r.probes.size() << '\n';
    } else {
      auto m = run_trial(c);
      double ratio = 0;
      for (const auto& s : m.sites) ratio += s.query_ratio / static_cast<double>(m.sites.size());
      out << m.mean_response_ms << ',' << m.ci95_ms << ',' << (m.stable ? 1 : 0) << ',' << m.false_positives << ','
          << m.cache_hits << ',' << m.tiles << ',' << m.announcement_bytes << ',' << ratio << '\n';
    }
    out.flush();
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      if (++pos[i] < axes.at(names[i]).size()) break;
      pos[i] = 0;
    }
    if (i == names.size()) break;
  }
}

}  // namespace icnfed::harness
