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

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "nvdd/analytic_coherence.hpp"
#include "nvdd/propagator.hpp"

using namespace nvdd;

namespace {

const double kRabi = hz_to_rad(20e6);

SpinTarget strong_larmor_target() { return target_from_larmor(hz_to_rad(2e6), hz_to_rad(200e3), 0.0); }

Matrix4c random_hermitian(unsigned seed) {
  std::srand(seed);
  Matrix4c a = Matrix4c::Random();
  return 0.5 * (a + a.adjoint()) * 1e6;
}

}  // namespace

TEST_CASE("segment exponential matches a general matrix exponential") {
  for (unsigned s = 1; s <= 5; ++s) {
    const Matrix4c h = random_hermitian(s);
    const double t = 3.7e-7;
    const Matrix4c ref = (cplx(0, -t) * h).exp();
    CHECK((expm_hermitian(h, t) - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unitary power matches repeated multiplication") {
  const Matrix4c u = one_period_unitary(strong_larmor_target(), xy8(0.25e-6, kRabi));
  Matrix4c p = Matrix4c::Identity();
  for (int n = 1; n <= 64; ++n) {
    p = u * p;
    if (n % 7 == 0 || n == 64) CHECK((unitary_power(u, n) - p).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK((unitary_power(u, 0) - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((unitary_power(u, -3) * unitary_power(u, 3) - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagators are unitary") {
  const SpinTarget t = strong_larmor_target();
  for (double tau : {0.05e-6, 0.25e-6, 1.3e-6}) {
    for (bool a_par : {false, true}) {
      const Matrix4c u = one_period_unitary(t, xy8(tau, kRabi, 0.3), a_par);
      CHECK(unitarity_defect(u) < 1e-12);
      CHECK(unitarity_defect(unitary_power(u, 10000)) < 1e-10);
    }
  }
}

TEST_CASE("zero coupling leaves full coherence") {
  const SpinTarget t = target_from_average(hz_to_rad(2e6), 0.0);
  for (double tau : {0.1e-6, 0.25e-6, 0.77e-6}) {
    CHECK(nv_coherence(unitary_power(one_period_unitary(t, xy8(tau, kRabi)), 60)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nv_coherence(unitary_power(one_period_unitary(t, cpmg8(tau, kRabi, 0.0, 0.0)), 60)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(nv_coherence(Matrix4c::Identity()) == doctest::Approx(1.0));
}

TEST_CASE("decoupled nucleus under delta pulses") {
  const SpinTarget t = make_target(hz_to_rad(1e6), 1.0, 0.0, 0.0);
  const Matrix4c u = one_period_unitary(t, xy8(0.3e-6, kRabi, 0.0, 0.0));
  // U = U_nv (x) U_n: every 2x2 block is proportional to the same matrix
  const Matrix2c b00 = u.block<2, 2>(0, 0), b11 = u.block<2, 2>(2, 2);
  CHECK(std::abs((b00 * b11.adjoint()).trace()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("delta-pulse limit of finite pulses") {
  const SpinTarget t = target_from_average(hz_to_rad(2e6), hz_to_rad(200e3));
  const double tau = 0.25e-6;
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double tt = tau * (0.8 + 0.01 * i);
    const PulseSequence ideal = xy8(tt, kRabi, 0.0, 0.0);
    const PulseSequence narrow = xy8(tt, kRabi, 0.0, tt / 1e4);
    const double a = nv_coherence(unitary_power(one_period_unitary(t, ideal), 60));
    const double b = nv_coherence(unitary_power(one_period_unitary(t, narrow), 60));
    worst = std::max(worst, std::abs(a - b));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("A_par mode is basis independent") {
  const SpinTarget t = target_from_average(hz_to_rad(2e6), hz_to_rad(150e3), 0.0);
  const PulseSequence seq = xy8(0.26e-6, kRabi);
  const double a = nv_coherence(unitary_power(one_period_unitary(t, seq, false), 40));
  const double b = nv_coherence(unitary_power(one_period_unitary(t, seq, true), 40));
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("coherence traces") {
  const SpinTarget a = target_from_average(hz_to_rad(402.6e3), hz_to_rad(21.6e3));
  const SpinTarget b = target_from_average(hz_to_rad(405.4e3), hz_to_rad(31.0e3));
  TraceRequest req;
  req.grid = {9.7e-6, 9.9e-6, 10.1e-6};
  req.family = SequenceFamily::builtin("xy8", hz_to_rad(10e6));
  req.pulse_count = 7;
  const SpinTarget both[] = {a, b};
  const CoherenceTrace tr = coherence_trace(both, req);
  const CoherenceTrace ta = coherence_trace(std::span(both, 1), req);
  const CoherenceTrace tb = coherence_trace(std::span(both + 1, 1), req);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(tr.coherence[i] == doctest::Approx(ta.coherence[i] * tb.coherence[i]).epsilon(1e-14));
    CHECK(std::abs(tr.coherence[i]) <= 1.0 + 1e-10);
  }
  CHECK(tr.method == TraceMethod::exact);

  TraceRequest threaded = req;
  threaded.threads = 3;
  CHECK(coherence_trace(both, threaded).coherence == tr.coherence);

  TraceRequest phase = req;
  phase.abscissa = Abscissa::global_phase;
  phase.grid = {0.0, 0.5};
  phase.period = 9.9e-6;
  const CoherenceTrace tp = coherence_trace(std::span(both, 1), phase);
  CHECK(tp.coherence[0] == doctest::Approx(ta.coherence[1]).epsilon(1e-12));
}

TEST_CASE("pulse-number scans") {
  // weak coupling, where second-order shifts stay small over many periods
  const SpinTarget t = target_from_average(hz_to_rad(2e6), hz_to_rad(20e3));
  const SequenceFamily fam = SequenceFamily::builtin("xy8", kRabi);
  const DipModel m = make_dip_model(t, fam, 2, DipKind::spurious);
  // aligned phase: cos^2 factor 1, L follows 1 - 2 sin^2(N_p coupling T / 2)
  const PulseSequence seq = fam.with_global_phase(-m.phi_perp).at_period(m.t_dip);
  std::vector<long long> counts;
  const long long step = std::llround(optimal_pulse_number(m).value / 5);
  for (long long j = 0; j <= 15; ++j) counts.push_back(j * step);
  const SpinTarget one[] = {t};
  const CoherenceTrace tr = pulse_number_scan(one, seq, counts);
  CHECK(tr.coherence[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double s = std::sin(counts[i] * 0.5 * m.coupling * m.t_dip);
    CHECK(std::abs(tr.coherence[i] - (1.0 - 2.0 * s * s)) < 0.05);
  }
}

TEST_CASE("delta-pulse XY8 against the conditional-branch overlap") {
  // Nucleus evolves under H0 or H1 depending on the NV branch; each pi pulse
  // swaps the branch. L = Re Tr[U_a^N U_b^N dagger] / 2.
  const double w = hz_to_rad(2e6), a = hz_to_rad(200e3);
  const SpinTarget t = target_from_average(w, a);
  Eigen::Matrix2cd ix, iz;
  ix << 0, 0.5, 0.5, 0;
  iz << 0.5, 0, 0, -0.5;
  const Eigen::Matrix2cd h[2] = {w * iz - a * ix, w * iz + a * ix};
  const SequenceFamily fam = SequenceFamily::builtin("xy8", kRabi, 0.0, 0.0);
  for (int k = 1; k <= 7; ++k) {
    const double period = dip_period(t, k), tau = period / 8;
    Eigen::Matrix2cd u[2];
    for (int start = 0; start < 2; ++start) {
      int s = start;
      u[start] = Eigen::Matrix2cd::Identity();
      for (int seg = 0; seg < 9; ++seg) {
        const double d = (seg == 0 || seg == 8) ? 0.5 * tau : tau;
        u[start] = (cplx(0, -d) * h[s]).exp() * u[start];
        if (seg < 8) s = 1 - s;
      }
    }
    Eigen::Matrix2cd ua = Eigen::Matrix2cd::Identity(), ub = Eigen::Matrix2cd::Identity();
    for (int n = 0; n < 60; ++n) {
      ua = u[0] * ua;
      ub = u[1] * ub;
    }
    const double oracle = 0.5 * (ua * ub.adjoint()).trace().real();
    const double lib = nv_coherence(unitary_power(one_period_unitary(t, fam.at_period(period)), 60));
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-9));
  }
}
