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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nvdd/analytic_coherence.hpp"
#include "nvdd/isotopes.hpp"
#include "nvdd_driver/commands.hpp"
#include "nvdd_driver/config.hpp"
#include "nvdd_driver/presets.hpp"
#include "nvdd_driver/version.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

using namespace nvdd;
using namespace nvdd::driver;

int report(const PresetReport& rep) {
  std::cout << rep.summary();
  for (const auto& f : rep.files) std::cout << "wrote " << f.string() << "\n";
  return rep.passed() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV dynamical-decoupling simulator with finite pulses"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out;
  unsigned threads = 0;
  std::string format = "csv";
  app.add_option("--out", out, "Output directory");
  app.add_option("--threads", threads, "Worker threads (0 = machine parallelism)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto with_config = [&](CLI::App* sub) { sub->add_option("--config", config_path, "JSON config")->required(); };

  auto* trace = app.add_subcommand("trace", "Coherence trace over the configured scan");
  with_config(trace);
  std::string method;
  trace->add_option("--method", method, "exact|analytic|floquet|all (default: config or exact)");

  auto* run = app.add_subcommand("run", "Generic scan runner driven entirely by the config");
  with_config(run);

  auto* fscan = app.add_subcommand("floquet-scan", "Folded and tracked quasienergies over a period scan");
  with_config(fscan);
  int truncation = 0;
  fscan->add_option("--truncation", truncation, "Dressed-index cutoff L (0 = default per point)");

  auto* gap = app.add_subcommand("gap", "Avoided-crossing gaps at harmonics k");
  with_config(gap);
  std::vector<int> ks;
  gap->add_option("--k", ks, "Harmonics")->required()->delimiter(',');

  auto* modspec = app.add_subcommand("modspec", "Fourier coefficients of the modulation functions");
  with_config(modspec);
  double period = 0.0;
  int k_max = 24;
  modspec->add_option("--period-s", period, "Sequence period (s)")->required();
  modspec->add_option("--kmax", k_max, "Largest harmonic");

  auto* dip = app.add_subcommand("dip", "Closed-form dip trace");
  with_config(dip);
  std::string kind = "auto";
  int dip_k = 0;
  long long n_p = 1;
  dip->add_option("--kind", kind, "expected|spurious|auto")->check(CLI::IsMember({"expected", "spurious", "auto"}));
  dip->add_option("--k", dip_k, "Harmonic")->required();
  dip->add_option("--np", n_p, "Pulse-sequence repetitions")->required();

  auto* suppress = app.add_subcommand("suppress", "Mimic analysis for an isotope pair");
  std::vector<std::string> pair;
  double b0 = 0.05;
  double rabi_hz = 20e6;
  std::string builtin = "xy8";
  suppress->add_option("--isotope-pair", pair, "PRIMARY MIMIC")->required()->expected(2);
  suppress->add_option("--b0", b0, "Field (T)");
  suppress->add_option("--rabi-hz", rabi_hz, "Rabi frequency (Hz)");
  suppress->add_option("--sequence", builtin, "Built-in sequence");

  auto* fig1 = app.add_subcommand("preset-fig1", "Quasienergy fans and dip traces, XY8 with delta and finite pulses");
  auto* fig4 = app.add_subcommand("preset-fig4", "Analytic dips against exact numerics at k = 2 and 4");
  auto* fig5 = app.add_subcommand("preset-fig5", "Two-spin resolution at the k = 2 spurious dip");
  auto* table1 = app.add_subcommand("preset-table1", "Isotope mimics and global-phase suppression");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    RunOptions opt;
    if (!out.empty()) opt.out_dir = out;
    opt.threads = threads;
    opt.format = parse_format(format);
    PresetOptions popt{out.empty() ? std::filesystem::path("nvdd_out") : std::filesystem::path(out), threads,
                       opt.format};

    if (fig1->parsed()) return report(preset_fig1(popt));
    if (fig4->parsed()) return report(preset_fig4(popt));
    if (fig5->parsed()) return report(preset_fig5(popt));
    if (table1->parsed()) return report(preset_table1(popt));

    if (suppress->parsed()) {
      const SequenceFamily fam = SequenceFamily::builtin(builtin, hz_to_rad(rabi_hz));
      const MimicResult r = mimic_analysis(find_isotope(pair[0]), find_isotope(pair[1]), b0, fam);
      nlohmann::json rec = mimic_record(r, b0);
      rec["sequence"] = describe_family(fam);
      if (opt.out_dir) {
        std::filesystem::create_directories(*opt.out_dir);
        const auto path = *opt.out_dir / "suppress.json";
        std::ofstream(path) << rec.dump(1) << '\n';
        std::cout << "wrote " << path.string() << "\n";
      } else {
        std::cout << rec.dump(1) << "\n";
      }
      return 0;
    }

    ExperimentConfig cfg = load_config(config_path);
    std::filesystem::path written;
    if (trace->parsed()) {
      std::optional<Method> m;
      if (!method.empty()) m = parse_method(method);
      written = run_experiment(cfg, m, opt, "trace");
    } else if (run->parsed()) {
      written = run_experiment(cfg, std::nullopt, opt, "run");
    } else if (fscan->parsed()) {
      if (truncation > 0) cfg.truncation = truncation;
      written = run_floquet_scan(cfg, opt);
    } else if (gap->parsed()) {
      written = run_gap(cfg, ks, opt);
    } else if (modspec->parsed()) {
      written = run_modspec(cfg, period, k_max, opt);
    } else if (dip->parsed()) {
      written = run_dip(cfg, kind, dip_k, n_p, opt);
    }
    std::cout << "wrote " << written.string() << "\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NoResonanceError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
