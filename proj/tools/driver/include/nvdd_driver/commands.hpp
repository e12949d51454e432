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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nvdd/analytic_coherence.hpp"
#include "nvdd_driver/config.hpp"
#include "nvdd_driver/output.hpp"

namespace nvdd::driver {

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  unsigned threads = 0;
  Format format = Format::csv;
};

/// Resolves "auto" to expected when f_z^k is nonzero at T_dip, else spurious.
DipKind resolve_kind(const std::string& kind, const SpinTarget& target, const SequenceFamily& family, int k);

/// Generic scan: columns for each requested method over the configured grid.
Table experiment_table(const ExperimentConfig& cfg, Method method, unsigned threads);
std::filesystem::path run_experiment(const ExperimentConfig& cfg, std::optional<Method> method,
                                     const RunOptions& opt, const std::string& command);

std::filesystem::path run_floquet_scan(const ExperimentConfig& cfg, const RunOptions& opt);
std::filesystem::path run_gap(const ExperimentConfig& cfg, const std::vector<int>& ks, const RunOptions& opt);
std::filesystem::path run_modspec(const ExperimentConfig& cfg, double period, int k_max, const RunOptions& opt);
std::filesystem::path run_dip(const ExperimentConfig& cfg, const std::string& kind, int k, long long n_p,
                              const RunOptions& opt);

nlohmann::json mimic_record(const MimicResult& r, double b0);

}  // namespace nvdd::driver
