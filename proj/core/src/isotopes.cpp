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

#include "nvdd/isotopes.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "nvdd/common.hpp"

namespace nvdd {

namespace {

// gamma / 2 pi. 1H from CODATA 2018; the rest from standard NMR tables.
const std::array<Isotope, 6> kIsotopes{{
    {"H1", 42.577478},
    {"C13", 10.7084},
    {"N14", 3.077},
    {"N15", -4.316},
    {"Si29", -8.465},
    {"P31", 17.235},
}};

std::string canonical(const std::string& name) {
  std::string letters, digits;
  for (char c : name) {
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    else if (std::isalpha(static_cast<unsigned char>(c)))
      letters += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return letters + digits;
}

}  // namespace

double Isotope::gamma() const { return hz_to_rad(gamma_mhz_per_tesla * 1e6); }

std::span<const Isotope> isotope_table() { return kIsotopes; }

const Isotope& find_isotope(const std::string& name) {
  const std::string key = canonical(name);
  auto it = std::find_if(kIsotopes.begin(), kIsotopes.end(),
                         [&](const Isotope& iso) { return canonical(iso.name) == key; });
  if (it == kIsotopes.end()) throw ValidationError("unknown isotope: " + name);
  return *it;
}

}  // namespace nvdd
