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

// Independent reference computations for the tests. Nothing here calls the
// library's modulation, Fourier or Floquet code.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nvdd/pulses.hpp"

namespace oracle {

using cplx = std::complex<double>;
using M2 = Eigen::Matrix2cd;

inline M2 sx() { M2 m; m << 0, 1, 1, 0; return m; }
inline M2 sy() { M2 m; m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
inline M2 sz() { M2 m; m << 1, 0, 0, -1; return m; }

// exp(-i angle/2 (cos(phi) sx + sin(phi) sy))
inline M2 rotation(double angle, double phi) {
  const M2 n = std::cos(phi) * sx() + std::sin(phi) * sy();
  return std::cos(0.5 * angle) * M2::Identity() - cplx(0, 1) * std::sin(0.5 * angle) * n;
}

// Pulse-only NV propagator from 0 to t, built one pulse at a time.
inline M2 frame_propagator(const nvdd::PulseSequence& seq, double t) {
  M2 u = M2::Identity();
  for (std::size_t m = 0; m < seq.size(); ++m) {
    const auto& p = seq.pulses()[m];
    const double phi = p.phase + seq.global_phase();
    if (p.duration == 0.0) {
      if (p.center <= t) u = rotation(nvdd::kPi, phi) * u;
      continue;
    }
    const double start = p.center - 0.5 * p.duration;
    if (t <= start) break;
    const double elapsed = std::min(t, p.center + 0.5 * p.duration) - start;
    u = rotation(p.rabi * elapsed, phi) * u;
  }
  return u;
}

// (f_x, f_y, f_z) with U^dagger sigma_z U = f . sigma.
inline std::array<double, 3> modulation(const nvdd::PulseSequence& seq, double t) {
  const M2 u = frame_propagator(seq, t);
  const M2 r = u.adjoint() * sz() * u;
  return {0.5 * (r * sx()).trace().real(), 0.5 * (r * sy()).trace().real(), 0.5 * (r * sz()).trace().real()};
}

// Segment edges (pulse starts, ends and centres) for piecewise quadrature.
inline std::vector<double> breakpoints(const nvdd::PulseSequence& seq) {
  std::vector<double> b{0.0};
  for (const auto& p : seq.pulses()) {
    b.push_back(p.center - 0.5 * p.duration);
    b.push_back(p.center + 0.5 * p.duration);
  }
  b.push_back(seq.period());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// (1/T) int_0^T f_axis(t) exp(-i k omega t) dt by adaptive Gauss-Kronrod on
// each smooth piece, sampling strictly inside the piece.
inline cplx fourier(const nvdd::PulseSequence& seq, int axis, int k) {
  using boost::math::quadrature::gauss_kronrod;
  const double period = seq.period();
  const double w = 2.0 * nvdd::kPi / period;
  const auto b = breakpoints(seq);
  cplx sum = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double a = b[i], c = b[i + 1];
    if (c - a <= 0.0) continue;
    auto f = [&](double t) { return modulation(seq, t)[axis]; };
    auto re = [&](double t) { return f(t) * std::cos(k * w * t); };
    auto im = [&](double t) { return -f(t) * std::sin(k * w * t); };
    sum += cplx(gauss_kronrod<double, 61>::integrate(re, a, c, 4, 1e-12),
                gauss_kronrod<double, 61>::integrate(im, a, c, 4, 1e-12));
  }
  return sum / period;
}

}  // namespace oracle
