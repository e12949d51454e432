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

#include <filesystem>
#include <string>
#include <vector>

#include "nvdd_driver/output.hpp"

namespace nvdd::driver {

struct PresetCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PresetReport {
  std::string preset;
  std::vector<PresetCheck> checks;
  std::vector<std::filesystem::path> files;

  bool passed() const;
  /// Human-readable summary, also written to <preset>_summary.txt.
  std::string summary() const;
};

struct PresetOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 0;
  Format format = Format::csv;
};

PresetReport preset_fig1(const PresetOptions& opt);
PresetReport preset_fig4(const PresetOptions& opt);
PresetReport preset_fig5(const PresetOptions& opt);
PresetReport preset_table1(const PresetOptions& opt);

}  // namespace nvdd::driver
