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

#pragma once

#include <optional>
#include <span>
#include <vector>

namespace nvdd {

struct TracePoint {
  double x = 0.0;
  double value = 0.0;
};

/// Indices of strict local minima with value below `ceiling`.
std::vector<std::size_t> local_minima(std::span<const double> y, double ceiling);

/// Smallest sample with lo <= x <= hi. Throws ValidationError if none.
TracePoint min_in_window(std::span<const double> x, std::span<const double> y, double lo, double hi);

/// Linear interpolation of y at x0 (x ascending). Throws DomainError outside.
double interpolate(std::span<const double> x, std::span<const double> y, double x0);

/// Centre of a dip as the midpoint of its outermost crossings of `level`
/// inside [lo, hi], the crossings located by linear interpolation. Robust to
/// the fringes of an over-rotated dip. Empty when nothing drops below level.
std::optional<double> dip_center(std::span<const double> x, std::span<const double> y, double level,
                                 double lo, double hi);

}  // namespace nvdd
