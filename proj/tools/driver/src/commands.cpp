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

#include "nvdd_driver/commands.hpp"

#include "nvdd/floquet.hpp"
#include "nvdd/parallel.hpp"

namespace nvdd::driver {

namespace {

using nlohmann::json;

std::filesystem::path out_dir(const ExperimentConfig& cfg, const RunOptions& opt) {
  return opt.out_dir ? *opt.out_dir : cfg.out_dir;
}

json config_metadata(const ExperimentConfig& cfg, const std::string& command) {
  json m = base_metadata(command);
  m["config"] = cfg.raw;
  m["targets"] = describe_targets(cfg.targets);
  m["sequence"] = describe_family(cfg.family);
  return m;
}

const ScanSpec& need_scan(const ExperimentConfig& cfg) {
  if (!cfg.scan) throw ValidationError("config needs a 'scan' block");
  return *cfg.scan;
}

double need_period(const ExperimentConfig& cfg) {
  if (!cfg.period) throw ValidationError("config needs 'period_s' for this abscissa");
  return *cfg.period;
}

int need_k(const ExperimentConfig& cfg) {
  if (!cfg.k) throw ValidationError("config needs 'k' for analytic or floquet methods");
  return *cfg.k;
}

std::string abscissa_column(Abscissa a) {
  switch (a) {
    case Abscissa::period: return "T_s";
    case Abscissa::pulse_count: return "pulse_count";
    case Abscissa::global_phase: return "global_phase_rad";
  }
  return "x";
}

// Closed-form or two-level stroboscopic coherence for one abscissa value,
// multiplied over targets.
double model_coherence(const ExperimentConfig& cfg, bool floquet, double x) {
  const int k = need_k(cfg);
  const Abscissa a = cfg.scan->abscissa;
  double period = a == Abscissa::period ? x : need_period(cfg);
  long long n_p = a == Abscissa::pulse_count ? static_cast<long long>(x) : cfg.pulse_count;
  SequenceFamily fam = a == Abscissa::global_phase ? cfg.family.with_global_phase(x) : cfg.family;
  double total = 1.0;
  for (const auto& t : cfg.targets) {
    if (floquet) {
      total *= nv_coherence(stroboscopic_propagator(t, fam.at_period(period), k, n_p));
      continue;
    }
    const DipKind kind = resolve_kind(cfg.kind, t, fam, k);
    const DipModel m = make_dip_model(t, fam, k, kind);
    total *= kind == DipKind::expected ? expected_coherence(m, n_p, period)
                                       : spurious_coherence(m, n_p, period);
  }
  return total;
}

}  // namespace

DipKind resolve_kind(const std::string& kind, const SpinTarget& target, const SequenceFamily& family, int k) {
  if (kind == "expected") return DipKind::expected;
  if (kind == "spurious") return DipKind::spurious;
  const auto c = harmonic_coefficients(family.with_global_phase(0.0).at_period(dip_period(target, k)), k);
  return std::abs(c.fz) > kCoefficientZero ? DipKind::expected : DipKind::spurious;
}

Table experiment_table(const ExperimentConfig& cfg, Method method, unsigned threads) {
  const ScanSpec& scan = need_scan(cfg);
  const bool exact = method == Method::exact || method == Method::all;
  const bool analytic = method == Method::analytic || method == Method::all;
  const bool floquet = method == Method::floquet || method == Method::all;

  std::vector<double> l_exact, l_analytic, l_floquet;
  if (exact) {
    if (scan.abscissa == Abscissa::pulse_count) {
      std::vector<long long> counts;
      for (double n : scan.grid) counts.push_back(static_cast<long long>(n));
      l_exact = pulse_number_scan(cfg.targets, cfg.family.at_period(need_period(cfg)), counts,
                                  cfg.include_a_par)
                    .coherence;
    } else {
      TraceRequest req;
      req.abscissa = scan.abscissa;
      req.grid = scan.grid;
      req.family = cfg.family;
      req.period = scan.abscissa == Abscissa::period ? 0.0 : need_period(cfg);
      req.pulse_count = cfg.pulse_count;
      req.include_a_par = cfg.include_a_par;
      req.threads = threads;
      l_exact = coherence_trace(cfg.targets, req).coherence;
    }
  }
  if (analytic)
    l_analytic = parallel_map(scan.grid.size(), threads, [&](std::size_t i) { return model_coherence(cfg, false, scan.grid[i]); });
  if (floquet)
    l_floquet = parallel_map(scan.grid.size(), threads, [&](std::size_t i) { return model_coherence(cfg, true, scan.grid[i]); });

  Table t;
  t.columns.push_back(abscissa_column(scan.abscissa));
  if (exact) t.columns.push_back("L_exact");
  if (analytic) t.columns.push_back("L_analytic");
  if (floquet) t.columns.push_back("L_floquet");
  for (std::size_t i = 0; i < scan.grid.size(); ++i) {
    std::vector<json> row{scan.grid[i]};
    if (exact) row.push_back(l_exact[i]);
    if (analytic) row.push_back(l_analytic[i]);
    if (floquet) row.push_back(l_floquet[i]);
    t.add_row(std::move(row));
  }
  return t;
}

std::filesystem::path run_experiment(const ExperimentConfig& cfg, std::optional<Method> method,
                                     const RunOptions& opt, const std::string& command) {
  const Method m = method.value_or(cfg.method);
  json meta = config_metadata(cfg, command);
  meta["method"] = to_string(m);
  return write_table(out_dir(cfg, opt), cfg.name, experiment_table(cfg, m, opt.threads), meta, opt.format);
}

std::filesystem::path run_floquet_scan(const ExperimentConfig& cfg, const RunOptions& opt) {
  const ScanSpec& scan = need_scan(cfg);
  if (scan.abscissa != Abscissa::period) throw ValidationError("floquet-scan needs a period scan");
  if (cfg.targets.size() != 1) throw ValidationError("floquet-scan takes exactly one target");
  const FloquetSpectrum s = quasienergy_scan(cfg.targets.front(), cfg.family, scan.grid, cfg.truncation, opt.threads);
  Table t;
  t.columns = {"T_s"};
  for (int q = 1; q <= 4; ++q) t.columns.push_back("quasienergy_" + std::to_string(q) + "_rad_s");
  for (int q = 1; q <= 4; ++q) t.columns.push_back("tracked_phase_" + std::to_string(q));
  for (std::size_t i = 0; i < s.periods.size(); ++i) {
    std::vector<json> row{s.periods[i]};
    for (double e : s.folded[i]) row.push_back(e);
    for (double p : s.tracked_phase[i]) row.push_back(p);
    t.add_row(std::move(row));
  }
  json meta = config_metadata(cfg, "floquet-scan");
  meta["truncation"] = cfg.truncation > 0 ? json(cfg.truncation) : json("default");
  return write_table(out_dir(cfg, opt), cfg.name + "_quasienergies", t, meta, opt.format);
}

std::filesystem::path run_gap(const ExperimentConfig& cfg, const std::vector<int>& ks, const RunOptions& opt) {
  if (ks.empty()) throw ValidationError("gap needs at least one k");
  if (cfg.targets.size() != 1) throw ValidationError("gap takes exactly one target");
  const auto gaps = parallel_map(ks.size(), opt.threads, [&](std::size_t i) {
    return crossing_gap(cfg.targets.front(), cfg.family, ks[i]);
  });
  Table t;
  t.columns = {"k", "T_dip_s", "gap_rad_s", "predicted_gap_rad_s", "kind", "coincidence", "T_min_s", "truncation"};
  for (const auto& g : gaps)
    t.add_row({g.k, g.t_dip, g.gap, g.predicted, to_string(g.kind), g.coincidence ? 1 : 0, g.t_min, g.truncation});
  return write_table(out_dir(cfg, opt), cfg.name + "_gaps", t, config_metadata(cfg, "gap"), opt.format);
}

std::filesystem::path run_modspec(const ExperimentConfig& cfg, double period, int k_max, const RunOptions& opt) {
  const PulseSequence seq = cfg.family.at_period(period);
  const ModulationSpectrum s = modulation_spectrum(seq, k_max);
  Table t;
  t.columns = {"k", "fx_re", "fx_im", "fy_re", "fy_im", "fz_re", "fz_im", "abs_fperp", "phi_perp_rad"};
  for (int k = -k_max; k <= k_max; ++k) {
    const auto& c = s.at(k);
    t.add_row({k, c.fx.real(), c.fx.imag(), c.fy.real(), c.fy.imag(), c.fz.real(), c.fz.imag(),
               s.abs_fperp(k), s.phi_perp(k)});
  }
  json meta = config_metadata(cfg, "modspec");
  meta["period_s"] = period;
  meta["parseval_sum"] = s.parseval_sum();
  meta["warnings"] = seq.warnings();
  return write_table(out_dir(cfg, opt), cfg.name + "_modspec", t, meta, opt.format);
}

std::filesystem::path run_dip(const ExperimentConfig& cfg, const std::string& kind, int k, long long n_p,
                              const RunOptions& opt) {
  if (cfg.targets.size() != 1) throw ValidationError("dip takes exactly one target");
  const SpinTarget& target = cfg.targets.front();
  const DipKind dk = resolve_kind(kind, target, cfg.family, k);
  const DipModel m = make_dip_model(target, cfg.family, k, dk);
  std::vector<double> grid;
  if (cfg.scan && cfg.scan->abscissa == Abscissa::period) {
    grid = cfg.scan->grid;
  } else {
    const double w = 5.0 * m.coupling / m.omega_av;
    grid = linspace(m.t_dip * (1.0 - w), m.t_dip * (1.0 + w), 401);
  }
  const CoherenceTrace tr = analytic_trace(m, grid, n_p);
  Table t;
  t.columns = {"T_s", "L", "in_validity_window"};
  for (std::size_t i = 0; i < grid.size(); ++i) t.add_row({grid[i], tr.coherence[i], m.in_validity_window(grid[i]) ? 1 : 0});
  json meta = config_metadata(cfg, "dip");
  meta["kind"] = to_string(dk);
  meta["k"] = k;
  meta["pulse_count"] = n_p;
  meta["coupling_rad_s"] = m.coupling;
  meta["phi_perp_rad"] = m.phi_perp;
  meta["t_dip_s"] = m.t_dip;
  meta["n_p_max"] = m.n_p_max();
  meta["width_s"] = m.width();
  return write_table(out_dir(cfg, opt), cfg.name + "_dip", t, meta, opt.format);
}

json mimic_record(const MimicResult& r, double b0) {
  json j{{"primary", r.primary},
         {"mimic", r.mimic},
         {"b0_tesla", b0},
         {"found", r.found},
         {"fundamental_k", r.fundamental},
         {"k_exact", r.k_exact},
         {"k", r.k},
         {"mismatch", r.mismatch},
         {"harmonic", std::to_string(r.ratio_num) + (r.ratio_den == 1 ? "" : "/" + std::to_string(r.ratio_den)) + "x"},
         {"t_dip_s", r.t_dip}};
  if (r.found) {
    j["phi_perp_rad"] = r.phi_perp;
    j["phi_g_rad"] = r.phi_g;
    j["phi_g_over_pi"] = r.phi_g / kPi;
  } else {
    j["reason"] = r.reason;
  }
  return j;
}

}  // namespace nvdd::driver
