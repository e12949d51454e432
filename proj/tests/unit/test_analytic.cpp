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

#include <cmath>
#include <random>

#include <doctest.h>

#include "nvdd/analytic_coherence.hpp"
#include "nvdd/floquet.hpp"

using namespace nvdd;

namespace {

const double kRabi = hz_to_rad(20e6);

// Rabi flip probability for a two-level system driven with Rabi frequency c
// at detuning d for time t.
double rabi_oracle(double d, double c, double t) {
  const double w = std::hypot(c, d);
  if (w == 0.0) return 1.0;
  const double s = std::sin(0.5 * w * t);
  return 1.0 - 2.0 * c * c / (w * w) * s * s;
}

SpinTarget weak_target() { return target_from_average(hz_to_rad(2e6), hz_to_rad(20e3)); }

}  // namespace

TEST_CASE("two-level kernel against the Rabi formula") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double c = 1e5 * (1.0 + u(rng));
    const double d = 5e5 * u(rng);
    const long long n = 1 + static_cast<long long>(50 * (1.0 + u(rng)));
    const double period = 2e-6 * (1.5 + u(rng));
    CHECK(two_level_coherence(d, c, n, period) == doctest::Approx(rabi_oracle(d, c, n * period)).epsilon(1e-12));
    CHECK(two_level_coherence(d, c, n, period) == doctest::Approx(two_level_coherence(-d, c, n, period)));
  }
  CHECK(two_level_coherence(1e4, 0.0, 12, 1e-6) == 1.0);
  CHECK(two_level_coherence(0.0, 1e5, 0, 1e-6) == 1.0);
}

TEST_CASE("expected dip reaches -1 at the optimal pulse number") {
  const SpinTarget t = weak_target();
  const DipModel m = make_dip_model(t, SequenceFamily::builtin("xy8", kRabi, 0.0, 0.0), 4, DipKind::expected);
  CHECK(m.t_dip == doctest::Approx(dip_period(t, 4)));
  CHECK(std::abs(m.detuning(m.t_dip)) < 1e-12 * t.omega_av());
  const double c = m.coupling;
  CHECK(c == doctest::Approx(t.a_perp() * 2.0 / kPi).epsilon(1e-9));
  CHECK(m.n_p_max() == doctest::Approx(kPi / (c * m.t_dip)));
  CHECK(m.width() == doctest::Approx(2.0 * c * m.t_dip / t.omega_av()));
  const PulseNumberOptimum opt = optimal_pulse_number(m);
  CHECK(opt.value == doctest::Approx(m.n_p_max()));
  CHECK(opt.nearest == std::llround(m.n_p_max()));
  // A pulse number that matches exactly gives a full flip.
  DipModel tuned = m;
  tuned.coupling = kPi / (25 * m.t_dip);
  CHECK(expected_coherence(tuned, 25, m.t_dip) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(expected_coherence(m, 7, m.t_dip * 1.001) ==
        doctest::Approx(two_level_coherence(m.detuning(m.t_dip * 1.001), c, 7, m.t_dip * 1.001)));
}

TEST_CASE("N_p^max scales inversely with the coupling") {
  const auto fam = SequenceFamily::builtin("xy8", kRabi);
  const DipModel a = make_dip_model(target_from_average(hz_to_rad(2e6), hz_to_rad(10e3)), fam, 4, DipKind::expected);
  const DipModel b = make_dip_model(target_from_average(hz_to_rad(2e6), hz_to_rad(20e3)), fam, 4, DipKind::expected);
  CHECK(a.n_p_max() / b.n_p_max() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("exact pulse-number scan bottoms out at N_p^max") {
  const SpinTarget t = weak_target();
  const auto fam = SequenceFamily::builtin("xy8", kRabi);
  const DipModel m = make_dip_model(t, fam, 4, DipKind::expected);
  const long long nmax = optimal_pulse_number(m).nearest;
  std::vector<long long> counts;
  for (long long n = 1; n <= 2 * nmax - 2; ++n) counts.push_back(n);
  const SpinTarget ts[] = {t};
  const CoherenceTrace tr = pulse_number_scan(ts, fam.at_period(m.t_dip), counts);
  const auto it = std::min_element(tr.coherence.begin(), tr.coherence.end());
  const long long best = counts[it - tr.coherence.begin()];
  CHECK(std::llabs(best - nmax) <= 1);
  CHECK(*it < -0.95);
}

TEST_CASE("spurious dips") {
  const SpinTarget t = weak_target();
  const auto fam = SequenceFamily::builtin("xy8", kRabi);
  const DipModel m = make_dip_model(t, fam, 2, DipKind::spurious);
  const double f = std::abs(harmonic_coefficients(fam.at_period(m.t_dip), 2).fperp());
  CHECK(m.coupling == doctest::Approx(t.a_perp() * f).epsilon(1e-12));

  // the XY8 phases are odd multiples of pi/4, so the dip never passes below zero
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double period = m.t_dip * (1.0 + 5.0 * m.width() * u(rng));
    const long long n = 1 + static_cast<long long>(3 * m.n_p_max() * (1.0 + u(rng)));
    const double l = spurious_coherence(m, n, period);
    CHECK(l >= -1e-12);
    CHECK(l >= dip_envelope(m, period) - 1e-12);
    CHECK(l <= 1.0 + 1e-12);
  }

  const double s = std::cos(m.phi_perp) * std::cos(m.phi_perp);
  CHECK(spurious_coherence(m, 9, m.t_dip * 1.0002) ==
        doctest::Approx(two_level_coherence(m.detuning(m.t_dip * 1.0002), m.coupling, 9, m.t_dip * 1.0002, s)));
}

TEST_CASE("suppression phase turns the spurious dip off") {
  for (const char* name : {"xy8", "cpmg8", "xy4"}) {
    const auto fam = SequenceFamily::builtin(name, kRabi);
    for (int k : {1, 2, 3, 5, 6}) {
      DipModel m;
      try {
        m = make_dip_model(weak_target(), fam, k, DipKind::spurious);
      } catch (const NoResonanceError&) {
        continue;
      }
      const double phi = suppression_phase(m);
      CHECK(phi > -kPi / 2);
      CHECK(phi <= kPi / 2 + 1e-15);
      m.global_phase = phi;
      for (long long n : {1LL, 13LL, 64LL, 1000LL})
        CHECK(std::abs(1.0 - spurious_coherence(m, n, m.t_dip * 1.0001)) < 1e-12);
    }
  }
}

TEST_CASE("global phase enters modulo pi") {
  DipModel m = make_dip_model(weak_target(), SequenceFamily::builtin("xy8", kRabi), 2, DipKind::spurious);
  m.global_phase = 0.3;
  const double a = spurious_coherence(m, 20, m.t_dip);
  m.global_phase = 0.3 + kPi;
  CHECK(spurious_coherence(m, 20, m.t_dip) == doctest::Approx(a).epsilon(1e-12));
  m.global_phase = 0.3 - 2 * kPi;
  CHECK(spurious_coherence(m, 20, m.t_dip) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("analytic close to exact near a weak dip") {
  const SpinTarget t = weak_target();
  const auto fam = SequenceFamily::builtin("xy8", kRabi);
  const DipModel m = make_dip_model(t, fam, 4, DipKind::expected);
  const long long n = optimal_pulse_number(m).nearest;
  std::vector<double> grid;
  for (int i = -20; i <= 20; ++i) grid.push_back(m.t_dip * (1.0 + 0.1 * m.width() * i));
  TraceRequest req;
  req.grid = grid;
  req.family = fam;
  req.pulse_count = n;
  const SpinTarget ts[] = {t};
  const CoherenceTrace ex = coherence_trace(ts, req);
  const CoherenceTrace an = analytic_trace(m, grid, n);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(ex.coherence[i] - an.coherence[i]) < 0.03);
  CHECK(an.method == TraceMethod::analytic_expected);
}

TEST_CASE("validity window bookkeeping") {
  const DipModel m = make_dip_model(weak_target(), SequenceFamily::builtin("xy8", kRabi), 4, DipKind::expected);
  CHECK(m.in_validity_window(m.t_dip));
  CHECK_FALSE(m.in_validity_window(m.t_dip * 1.2));
  const double grid[] = {m.t_dip, m.t_dip * 1.1, m.t_dip * 0.9};
  const CoherenceTrace tr = analytic_trace(m, grid, 10);
  double outside = -1;
  for (const auto& [k, v] : tr.parameters)
    if (k == "points_outside_validity") outside = v;
  CHECK(outside == 2.0);
}

TEST_CASE("fundamental harmonics") {
  CHECK(fundamental_harmonic(SequenceFamily::builtin("xy8", kRabi)) == 4);
  CHECK(fundamental_harmonic(SequenceFamily::builtin("cpmg8", kRabi)) == 4);
  CHECK(fundamental_harmonic(SequenceFamily::builtin("xy4", kRabi)) == 2);
}

TEST_CASE("mimic analysis") {
  const auto fam = SequenceFamily::builtin("xy8", kRabi);
  struct Row {
    const char* p;
    const char* m;
    int k;
    int num;
    int den;
  };
  for (const Row& r : {Row{"H1", "C13", 1, 4, 1}, Row{"Si29", "C13", 5, 4, 5}, Row{"P31", "H1", 10, 2, 5}}) {
    const MimicResult res = mimic_analysis(find_isotope(r.p), find_isotope(r.m), 0.05, fam);
    CHECK(res.found);
    CHECK(res.k == r.k);
    const double kex = 4.0 * std::abs(find_isotope(r.m).gamma_mhz_per_tesla / find_isotope(r.p).gamma_mhz_per_tesla);
    CHECK(res.k_exact == doctest::Approx(kex));
    CHECK(res.mismatch < 0.02);
    CHECK(res.ratio_num == r.num);
    CHECK(res.ratio_den == r.den);
    CHECK(res.t_dip == doctest::Approx(4.0 * kTwoPi / std::abs(find_isotope(r.p).gamma() * 0.05)));
    CHECK(std::abs(std::cos(res.phi_perp + res.phi_g)) < 1e-9);
  }
  // N15 mimicking H1: 4 * 4.316 / 42.58 = 0.41, no integer harmonic nearby
  CHECK_FALSE(mimic_analysis(find_isotope("H1"), find_isotope("N15"), 0.05, fam).found);
  CHECK_THROWS_AS(mimic_analysis(find_isotope("H1"), find_isotope("C13"), 0.0, fam), ValidationError);
}

TEST_CASE("errors") {
  const auto delta = SequenceFamily::builtin("xy8", kRabi, 0.0, 0.0);
  CHECK_THROWS_AS(make_dip_model(weak_target(), delta, 2, DipKind::spurious), NoResonanceError);
  CHECK_THROWS_AS(make_dip_model(weak_target(), delta, 2, DipKind::expected), NoResonanceError);
  CHECK_THROWS_AS(make_dip_model(weak_target(), delta, 0, DipKind::expected), ValidationError);
  const DipModel e = make_dip_model(weak_target(), delta, 4, DipKind::expected);
  CHECK_THROWS_AS(spurious_coherence(e, 3, e.t_dip), ValidationError);
  CHECK_THROWS_AS(dip_envelope(e, e.t_dip), ValidationError);
  const DipModel s = make_dip_model(weak_target(), SequenceFamily::builtin("xy8", kRabi), 2, DipKind::spurious);
  CHECK_THROWS_AS(expected_coherence(s, 3, s.t_dip), ValidationError);
}
