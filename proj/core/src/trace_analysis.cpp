// Copyright 2026 The nvdd Authors
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

#include "nvdd/trace_analysis.hpp"

#include <algorithm>

#include "nvdd/common.hpp"

namespace nvdd {

namespace {

void check_sizes(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw ValidationError("trace arrays must match and be non-empty");
}

}  // namespace

std::vector<std::size_t> local_minima(std::span<const double> y, double ceiling) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] < y[i - 1] && y[i] <= y[i + 1] && y[i] < ceiling) out.push_back(i);
  return out;
}

TracePoint min_in_window(std::span<const double> x, std::span<const double> y, double lo, double hi) {
  check_sizes(x, y);
  std::optional<TracePoint> best;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= lo && x[i] <= hi && (!best || y[i] < best->value)) best = TracePoint{x[i], y[i]};
  if (!best) throw ValidationError("no samples in window");
  return *best;
}

double interpolate(std::span<const double> x, std::span<const double> y, double x0) {
  check_sizes(x, y);
  if (x0 < x.front() || x0 > x.back()) throw DomainError("interpolation point outside trace");
  auto it = std::lower_bound(x.begin(), x.end(), x0);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  if (j == 0) return y[0];
  const double t = (x0 - x[j - 1]) / (x[j] - x[j - 1]);
  return y[j - 1] + t * (y[j] - y[j - 1]);
}

std::optional<double> dip_center(std::span<const double> x, std::span<const double> y, double level,
                                 double lo, double hi) {
  check_sizes(x, y);
  std::optional<std::size_t> first, last;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo || x[i] > hi || !(y[i] < level)) continue;
    if (!first) first = i;
    last = i;
  }
  if (!first) return std::nullopt;
  auto cross = [&](std::size_t below, std::size_t above) {
    if (x[above] < lo || x[above] > hi) return x[below];
    const double t = (level - y[below]) / (y[above] - y[below]);
    return x[below] + t * (x[above] - x[below]);
  };
  const double left = *first > 0 ? cross(*first, *first - 1) : x[*first];
  const double right = *last + 1 < x.size() ? cross(*last, *last + 1) : x[*last];
  return 0.5 * (left + right);
}

}  // namespace nvdd
