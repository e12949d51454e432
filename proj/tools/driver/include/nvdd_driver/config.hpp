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

#include "nvdd/propagator.hpp"
#include "nvdd/pulses.hpp"
#include "nvdd/spin_model.hpp"

namespace nvdd::driver {

// Config schema (JSON, frequencies in Hz, times in s):
//
//   "targets":  [ {gamma_n_hz_per_tesla, b0_tesla, a_x_hz, a_z_hz}
//               | {larmor_hz, a_x_hz, a_z_hz}
//               | {omega_av_hz, a_perp_hz, a_par_hz?} ]      ("target" also accepted)
//   "sequence": {builtin: xy8|cpmg8|xy4, rabi_hz, global_phase_rad?, t_p_s?}
//             | {period_s, global_phase_rad?, pulses: [{center_fraction, phase_rad, rabi_hz, duration_s}]}
//   "scan":     {abscissa: period|pulse_count|global_phase,
//                start, stop, points          (or around_k + half_width_rel for period)}
//   "pulse_count", "period_s", "k", "kind" (expected|spurious|auto),
//   "method": exact|analytic|floquet|all, "include_a_par", "truncation",
//   "output": {dir, name}

enum class Method { exact, analytic, floquet, all };
std::string to_string(Method m);
Method parse_method(const std::string& s);

struct ScanSpec {
  Abscissa abscissa = Abscissa::period;
  std::vector<double> grid;
};

struct ExperimentConfig {
  std::vector<SpinTarget> targets;
  SequenceFamily family;
  std::optional<ScanSpec> scan;
  long long pulse_count = 1;
  std::optional<double> period;
  std::optional<int> k;
  std::string kind = "auto";
  Method method = Method::exact;
  bool include_a_par = false;
  int truncation = 0;
  std::filesystem::path out_dir = ".";
  std::string name = "trace";
  nlohmann::json raw;
};

/// Throws ValidationError for any schema violation.
SpinTarget parse_target(const nlohmann::json& j);
SequenceFamily parse_sequence(const nlohmann::json& j);
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Evenly spaced grid including both ends.
std::vector<double> linspace(double start, double stop, int points);

/// Echo of the targets in rad/s for metadata.
nlohmann::json describe_targets(const std::vector<SpinTarget>& targets);
nlohmann::json describe_family(const SequenceFamily& family);

}  // namespace nvdd::driver
