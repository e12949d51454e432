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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "nvdd/common.hpp"
#include "nvdd/trace_analysis.hpp"

using namespace nvdd;

TEST_CASE("local minima below a ceiling") {
  const std::vector<double> y{1.0, 0.5, 0.8, 0.98, 0.995, 0.99, 1.0, 0.2, 0.3};
  const auto m = local_minima(y, 0.99);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == 1);
  CHECK(m[1] == 7);
}

TEST_CASE("window minimum and interpolation") {
  std::vector<double> x, y;
  for (int i = 0; i <= 100; ++i) {
    x.push_back(0.01 * i);
    y.push_back((x.back() - 0.3) * (x.back() - 0.3));
  }
  const TracePoint p = min_in_window(x, y, 0.0, 1.0);
  CHECK(p.x == doctest::Approx(0.3));
  CHECK(min_in_window(x, y, 0.5, 1.0).x == doctest::Approx(0.5));
  CHECK(interpolate(x, y, 0.305) == doctest::Approx(0.5 * (y[30] + y[31])));
  CHECK_THROWS_AS(interpolate(x, y, 1.5), DomainError);
}

TEST_CASE("dip center from level crossings") {
  std::vector<double> x, y;
  for (int i = 0; i <= 400; ++i) {
    x.push_back(1.0 + 0.001 * i);
    const double d = (x.back() - 1.23) / 0.02;
    y.push_back(1.0 - 0.8 / (1.0 + d * d));
  }
  const auto c = dip_center(x, y, 0.5, 1.1, 1.35);
  REQUIRE(c.has_value());
  CHECK(*c == doctest::Approx(1.23).epsilon(1e-6));
  CHECK_FALSE(dip_center(x, y, 0.1, 1.1, 1.35).has_value());
}
