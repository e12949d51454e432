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

#include "nvdd_driver/output.hpp"

#include <cstdio>
#include <fstream>

#include "nvdd/common.hpp"
#include "nvdd_driver/version.hpp"

namespace nvdd::driver {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ValidationError("format must be csv or json");
}

void Table::add_row(std::vector<nlohmann::json> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
  rows.push_back(std::move(row));
}

nlohmann::json base_metadata(const std::string& command) {
  return {{"tool", "nvdd"}, {"version", kVersion}, {"command", command}, {"units", "SI, angular frequencies in rad/s"}};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& name,
                                  const Table& table, const nlohmann::json& metadata, Format format) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (name + (format == Format::csv ? ".csv" : ".json"));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format == Format::json) {
    nlohmann::json doc{{"metadata", metadata}, {"columns", table.columns}, {"rows", table.rows}};
    out << doc.dump(1) << '\n';
  } else {
    out << "# " << metadata.dump() << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        if (row[c].is_number()) out << format_number(row[c].get<double>());
        else if (row[c].is_string()) out << row[c].get<std::string>();
        else out << row[c].dump();
      }
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return path;
}

}  // namespace nvdd::driver
