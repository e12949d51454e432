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

#include <span>
#include <string>
#include <vector>

namespace nvdd {

/// Nuclear species with its gyromagnetic ratio. Values are external reference
/// data (CODATA for 1H, standard NMR tables otherwise), in MHz/T.
struct Isotope {
  std::string name;
  double gamma_mhz_per_tesla = 0.0;

  /// gamma in rad s^-1 T^-1.
  double gamma() const;
};

std::span<const Isotope> isotope_table();

/// Case-insensitive lookup accepting "C13" and "13C" spellings.
/// Throws ValidationError for an unknown name.
const Isotope& find_isotope(const std::string& name);

}  // namespace nvdd
