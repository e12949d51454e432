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

#include "nvdd_driver/config.hpp"

#include <cmath>
#include <fstream>

namespace nvdd::driver {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing key: ") + key);
  if (!j.at(key).is_number()) throw ValidationError(std::string("key must be numeric: ") + key);
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ValidationError(std::string("non-finite value: ") + key);
  return v;
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

Abscissa parse_abscissa(const std::string& s) {
  if (s == "period") return Abscissa::period;
  if (s == "pulse_count") return Abscissa::pulse_count;
  if (s == "global_phase") return Abscissa::global_phase;
  throw ValidationError("unknown abscissa: " + s);
}

}  // namespace

Method parse_method(const std::string& s) {
  if (s == "exact") return Method::exact;
  if (s == "analytic") return Method::analytic;
  if (s == "floquet") return Method::floquet;
  if (s == "all") return Method::all;
  throw ValidationError("unknown method: " + s);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::analytic: return "analytic";
    case Method::floquet: return "floquet";
    case Method::all: return "all";
  }
  return "unknown";
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) throw ValidationError("scan needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < points; ++i) out[i] = start + (stop - start) * i / (points - 1);
  return out;
}

SpinTarget parse_target(const json& j) {
  if (!j.is_object()) throw ValidationError("target must be an object");
  if (j.contains("omega_av_hz"))
    return target_from_average(hz_to_rad(number(j, "omega_av_hz")), hz_to_rad(number(j, "a_perp_hz")),
                               hz_to_rad(number_or(j, "a_par_hz", 0.0)));
  const double a_x = hz_to_rad(number_or(j, "a_x_hz", 0.0));
  const double a_z = hz_to_rad(number_or(j, "a_z_hz", 0.0));
  if (j.contains("larmor_hz")) return target_from_larmor(hz_to_rad(number(j, "larmor_hz")), a_x, a_z);
  return make_target(hz_to_rad(number(j, "gamma_n_hz_per_tesla")), number(j, "b0_tesla"), a_x, a_z);
}

SequenceFamily parse_sequence(const json& j) {
  if (!j.is_object()) throw ValidationError("sequence must be an object");
  const double phi = number_or(j, "global_phase_rad", 0.0);
  if (j.contains("builtin")) {
    std::optional<double> tp;
    if (j.contains("t_p_s")) tp = number(j, "t_p_s");
    return SequenceFamily::builtin(j.at("builtin").get<std::string>(), hz_to_rad(number(j, "rabi_hz")), phi, tp);
  }
  if (!j.contains("pulses") || !j.at("pulses").is_array())
    throw ValidationError("sequence needs 'builtin' or a 'pulses' list");
  const double period = number(j, "period_s");
  std::vector<Pulse> pulses;
  for (const auto& p : j.at("pulses")) {
    Pulse q;
    q.center = number(p, "center_fraction") * period;
    q.phase = number_or(p, "phase_rad", 0.0);
    q.rabi = hz_to_rad(number_or(p, "rabi_hz", 0.0));
    q.duration = number_or(p, "duration_s", q.rabi > 0.0 ? kPi / q.rabi : 0.0);
    pulses.push_back(q);
  }
  return SequenceFamily::from_sequence(PulseSequence(period, std::move(pulses), phi),
                                       j.value("name", std::string("custom")));
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  ExperimentConfig c;
  c.raw = j;
  if (j.contains("targets")) {
    if (!j.at("targets").is_array() || j.at("targets").empty())
      throw ValidationError("'targets' must be a non-empty array");
    for (const auto& t : j.at("targets")) c.targets.push_back(parse_target(t));
  } else if (j.contains("target")) {
    c.targets.push_back(parse_target(j.at("target")));
  } else {
    throw ValidationError("missing 'target' or 'targets'");
  }
  if (!j.contains("sequence")) throw ValidationError("missing 'sequence'");
  c.family = parse_sequence(j.at("sequence"));

  if (j.contains("pulse_count")) {
    c.pulse_count = j.at("pulse_count").get<long long>();
    if (c.pulse_count < 0) throw ValidationError("pulse_count must be >= 0");
  }
  if (j.contains("period_s")) {
    c.period = number(j, "period_s");
    if (!(*c.period > 0.0)) throw ValidationError("period_s must be positive");
  }
  if (j.contains("k")) {
    c.k = j.at("k").get<int>();
    if (*c.k < 1) throw ValidationError("k must be >= 1");
  }
  c.kind = j.value("kind", std::string("auto"));
  if (c.kind != "auto" && c.kind != "expected" && c.kind != "spurious")
    throw ValidationError("kind must be auto, expected or spurious");
  c.method = parse_method(j.value("method", std::string("exact")));
  c.include_a_par = j.value("include_a_par", false);
  c.truncation = j.value("truncation", 0);

  if (j.contains("scan")) {
    const json& s = j.at("scan");
    ScanSpec spec;
    spec.abscissa = parse_abscissa(s.value("abscissa", std::string("period")));
    const int points = s.value("points", 201);
    if (s.contains("around_k")) {
      if (spec.abscissa != Abscissa::period) throw ValidationError("around_k needs a period scan");
      const double t = dip_period(c.targets.front(), s.at("around_k").get<int>());
      const double w = number(s, "half_width_rel");
      spec.grid = linspace(t * (1.0 - w), t * (1.0 + w), points);
    } else {
      spec.grid = linspace(number(s, "start"), number(s, "stop"), points);
    }
    if (spec.abscissa == Abscissa::period)
      for (double t : spec.grid)
        if (!(t > 0.0)) throw ValidationError("scan periods must be positive");
    if (spec.abscissa == Abscissa::pulse_count)
      for (double& n : spec.grid) {
        n = std::round(n);
        if (n < 0) throw ValidationError("scan pulse counts must be >= 0");
      }
    c.scan = std::move(spec);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    c.out_dir = o.value("dir", std::string("."));
    c.name = o.value("name", std::string("trace"));
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

json describe_targets(const std::vector<SpinTarget>& targets) {
  json arr = json::array();
  for (const auto& t : targets)
    arr.push_back({{"larmor_rad_s", t.larmor()},
                   {"a_x_rad_s", t.a_x()},
                   {"a_z_rad_s", t.a_z()},
                   {"omega_av_rad_s", t.omega_av()},
                   {"a_perp_rad_s", t.a_perp()},
                   {"a_par_rad_s", t.a_par()},
                   {"theta_av_rad", t.theta_av()}});
  return arr;
}

json describe_family(const SequenceFamily& f) {
  return {{"name", f.name},
          {"center_fractions", f.center_fractions},
          {"phases_rad", f.phases},
          {"rabi_rad_s", f.rabi},
          {"duration_s", f.duration},
          {"global_phase_rad", f.global_phase}};
}

}  // namespace nvdd::driver
