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

#include <nlohmann/json.hpp>

namespace nvdd::driver {

enum class Format { csv, json };
Format parse_format(const std::string& s);

/// Column-oriented result table. Cells are numbers or strings.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  void add_row(std::vector<nlohmann::json> row);
};

/// Metadata common to every output: tool version plus the caller's fields.
nlohmann::json base_metadata(const std::string& command);

/// Writes dir/name.csv (first line '# ' + compact metadata JSON, then a
/// header and rows, numbers at 17 significant digits) or dir/name.json.
/// Returns the written path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& name,
                                  const Table& table, const nlohmann::json& metadata, Format format);

std::string format_number(double v);

}  // namespace nvdd::driver
