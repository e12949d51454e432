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

#include "nvdd/floquet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "nvdd/parallel.hpp"
#include "nvdd/propagator.hpp"

namespace nvdd {

namespace {

Eigen::VectorXd floquet_eigenvalues(const FloquetMatrix& fm) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(fm.h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("Floquet eigensolve failed");
  return es.eigenvalues();
}

std::vector<double> pick_period(const Eigen::VectorXd& ev, double omega) {
  // Central levels are the best converged; they repeat with period omega.
  std::vector<double> central;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) <= 2.0 * omega) central.push_back(fold_quasienergy(ev[i], omega));
  std::sort(central.begin(), central.end());
  if (central.empty()) throw std::runtime_error("empty central Floquet spectrum");

  double best_gap = -1.0;
  double start = 0.0;
  for (std::size_t i = 0; i < central.size(); ++i) {
    const double a = central[i];
    const double b = (i + 1 < central.size()) ? central[i + 1] : central.front() + omega;
    if (b - a > best_gap) {
      best_gap = b - a;
      start = 0.5 * (a + b);
    }
  }
  start = fold_quasienergy(start, omega);

  std::vector<double> window;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] >= start && ev[i] < start + omega) window.push_back(ev[i]);
  if (window.size() != 4) {
    // Unconverged edge: fall back to the four levels nearest the window centre.
    std::vector<double> all(ev.data(), ev.data() + ev.size());
    const double mid = start + 0.5 * omega;
    std::partial_sort(all.begin(), all.begin() + 4, all.end(),
                      [mid](double x, double y) { return std::abs(x - mid) < std::abs(y - mid); });
    window.assign(all.begin(), all.begin() + 4);
  }
  for (double& e : window) e = fold_quasienergy(e, omega);
  std::sort(window.begin(), window.end());
  return window;
}

double splitting_from_eigenvalues(const Eigen::VectorXd& ev, double centre) {
  std::vector<double> all(ev.data(), ev.data() + ev.size());
  std::partial_sort(all.begin(), all.begin() + 4, all.end(), [centre](double x, double y) {
    return std::abs(x - centre) < std::abs(y - centre);
  });
  std::sort(all.begin(), all.begin() + 4);
  return all[2] - all[1];
}

// Smallest singular value of the 2x2 NV operator multiplying I_x-type
// nuclear flips, times two: the predicted middle splitting.
double predicted_gap(double a_perp, const HarmonicCoefficients& c) {
  const cplx i(0.0, 1.0);
  Matrix2c m;
  m << c.fz, c.fx - i * c.fy, c.fx + i * c.fy, -c.fz;
  Eigen::JacobiSVD<Matrix2c> svd(m);
  return std::abs(a_perp) * svd.singularValues().minCoeff();
}

}  // namespace

int default_truncation(const SpinTarget& target, double period) {
  const int harmonics = static_cast<int>(std::ceil(target.omega_av() * period / kTwoPi));
  return std::max(16, 4 * harmonics);
}

FloquetMatrix build_floquet(const SpinTarget& target, const PulseSequence& seq,
                            std::optional<int> truncation) {
  const double period = seq.period();
  const double omega = kTwoPi / period;
  const int L = truncation.value_or(default_truncation(target, period));
  const int needed = static_cast<int>(std::ceil(target.omega_av() / omega)) + 2;
  if (L < needed)
    throw ValidationError("Floquet truncation " + std::to_string(L) + " below required " +
                          std::to_string(needed));

  const ModulationSpectrum spec = modulation_spectrum(seq, 2 * L);
  const int n = 4 * (2 * L + 1);
  FloquetMatrix fm;
  fm.h = MatrixXc::Zero(n, n);
  fm.truncation = L;
  fm.period = period;
  fm.omega = omega;
  fm.omega_av = target.omega_av();

  const double half_a = 0.5 * target.a_perp();
  const cplx i(0.0, 1.0);
  for (int l = -L; l <= L; ++l) {
    const int base = FloquetMatrix::index(L, l, 0, 0);
    for (int nv = 0; nv < 2; ++nv) {
      fm.h(base + 2 * nv, base + 2 * nv) = 0.5 * target.omega_av() + l * omega;
      fm.h(base + 2 * nv + 1, base + 2 * nv + 1) = -0.5 * target.omega_av() + l * omega;
    }
    for (int lp = -L; lp <= L; ++lp) {
      const HarmonicCoefficients& c = spec.at(l - lp);
      // NV operator f . sigma, nucleus sigma_x.
      Matrix2c nv;
      nv << c.fz, c.fx - i * c.fy, c.fx + i * c.fy, -c.fz;
      const int col = FloquetMatrix::index(L, lp, 0, 0);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const cplx v = half_a * nv(a, b);
          fm.h(base + 2 * a, col + 2 * b + 1) += v;
          fm.h(base + 2 * a + 1, col + 2 * b) += v;
        }
    }
  }
  return fm;
}

double hermiticity_defect(const FloquetMatrix& fm) {
  const double scale = std::max(fm.h.cwiseAbs().maxCoeff(), 1e-300);
  return (fm.h - fm.h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

double fold_quasienergy(double energy, double omega) {
  double r = std::fmod(energy + 0.5 * omega, omega);
  if (r <= 0.0) r += omega;
  return r - 0.5 * omega;
}

std::vector<double> folded_quasienergies(const FloquetMatrix& fm) {
  return pick_period(floquet_eigenvalues(fm), fm.omega);
}

std::vector<double> monodromy_quasienergies(const SpinTarget& target, const PulseSequence& seq) {
  const Matrix4c u = one_period_unitary(target, seq, false);
  Eigen::ComplexEigenSolver<Matrix4c> es(u);
  const double period = seq.period();
  const double omega = kTwoPi / period;
  const cplx frame = std::conj(seq.frame_phase());
  std::vector<double> out;
  for (int j = 0; j < 4; ++j)
    out.push_back(fold_quasienergy(-std::arg(es.eigenvalues()[j] * frame) / period, omega));
  std::sort(out.begin(), out.end());
  return out;
}

FloquetSpectrum quasienergy_scan(const SpinTarget& target, const SequenceFamily& family,
                                 std::span<const double> periods, int truncation,
                                 unsigned threads) {
  for (double t : periods)
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("scan periods must be positive");
  FloquetSpectrum out;
  out.periods.assign(periods.begin(), periods.end());
  out.folded = parallel_map(periods.size(), threads, [&](std::size_t j) {
    const PulseSequence seq = family.at_period(periods[j]);
    const FloquetMatrix fm =
        build_floquet(target, seq, truncation > 0 ? std::optional<int>(truncation) : std::nullopt);
    return folded_quasienergies(fm);
  });

  std::array<int, 4> perm{};
  for (std::size_t j = 0; j < periods.size(); ++j) {
    std::vector<double> phase(4);
    for (int q = 0; q < 4; ++q) phase[q] = out.folded[j][q] * periods[j];
    if (j == 0) {
      out.tracked_phase.push_back(phase);
      continue;
    }
    const std::vector<double>& prev = out.tracked_phase.back();
    auto nearest = [](double x, double ref) {
      return x + kTwoPi * std::round((ref - x) / kTwoPi);
    };
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = 1e300;
    std::vector<double> best(4);
    do {
      double cost = 0.0;
      for (int q = 0; q < 4; ++q) cost += std::abs(nearest(phase[perm[q]], prev[q]) - prev[q]);
      if (cost < best_cost) {
        best_cost = cost;
        for (int q = 0; q < 4; ++q) best[q] = nearest(phase[perm[q]], prev[q]);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.tracked_phase.push_back(best);
  }
  return out;
}

std::string to_string(GapKind kind) {
  switch (kind) {
    case GapKind::expected: return "expected";
    case GapKind::spurious: return "spurious";
    case GapKind::closed: return "closed";
  }
  return "unknown";
}

double level_splitting(const FloquetMatrix& fm, int k) {
  if (k < 1) throw ValidationError("harmonic k must be >= 1");
  if (k > fm.truncation) throw ValidationError("harmonic exceeds Floquet truncation");
  return splitting_from_eigenvalues(floquet_eigenvalues(fm), 0.5 * k * fm.omega);
}

CrossingGap crossing_gap(const SpinTarget& target, const SequenceFamily& family, int k) {
  if (k < 1) throw ValidationError("harmonic k must be >= 1");
  CrossingGap out;
  out.k = k;
  out.t_dip = dip_period(target, k);
  const HarmonicCoefficients c = harmonic_coefficients(family.at_period(out.t_dip), k);
  out.fz = c.fz;
  out.fperp = c.fperp();
  const bool has_z = std::abs(c.fz) > kCoefficientZero;
  const bool has_perp = std::abs(out.fperp) > kCoefficientZero ||
                        std::abs(c.fx - cplx(0.0, 1.0) * c.fy) > kCoefficientZero;
  out.coincidence = has_z && has_perp;
  out.kind = has_z ? GapKind::expected : (has_perp ? GapKind::spurious : GapKind::closed);
  out.predicted = predicted_gap(target.a_perp(), c);

  const double coupling =
      std::abs(target.a_perp()) * std::max(std::abs(c.fz), std::abs(out.fperp));
  double half_width = 5.0 * coupling / target.omega_av();
  if (out.kind == GapKind::closed || half_width < 1e-6) half_width = 1e-2;
  half_width = std::min(half_width, 0.25 / k);
  const double t_lo = out.t_dip * (1.0 - half_width);
  const double t_hi = out.t_dip * (1.0 + half_width);

  int L = std::max(default_truncation(target, t_hi), k + 4);
  for (int attempt = 0;; ++attempt) {
    auto split = [&](double t, int trunc) {
      return level_splitting(build_floquet(target, family.at_period(t), trunc), k);
    };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = t_lo, b = t_hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = split(x1, L), f2 = split(x2, L);
    const double tol = 1e-9 * out.t_dip;
    while (b - a > tol) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = split(x1, L);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = split(x2, L);
      }
    }
    out.t_min = f1 < f2 ? x1 : x2;
    out.gap = std::min(f1, f2);
    out.truncation = L;
    const double check = split(out.t_min, L + 4);
    if (std::abs(check - out.gap) < 1e-6 * target.omega_av() || attempt >= 2) break;
    L *= 2;
  }
  return out;
}

Matrix4c stroboscopic_propagator(const SpinTarget& target, const PulseSequence& seq, int k,
                                 long long n_p) {
  if (k < 1) throw ValidationError("harmonic k must be >= 1");
  if (n_p < 0) throw ValidationError("pulse count must be non-negative");
  const HarmonicCoefficients c = harmonic_coefficients(seq, k);
  const double period = seq.period();
  const double detuning = target.omega_av() - k * kTwoPi / period;
  const cplx i(0.0, 1.0);
  const bool expected = std::abs(c.fz) > kCoefficientZero;
  const cplx f = expected ? c.fz : c.fperp();
  if (std::abs(f) <= kCoefficientZero)
    throw NoResonanceError("no coupling at harmonic " + std::to_string(k));

  const double coupling = std::abs(target.a_perp() * f);
  const double eps = 0.5 * std::hypot(detuning, coupling);
  const double theta = std::atan2(coupling, detuning);
  const double phase = static_cast<double>(n_p) * eps * period;
  const cplx a = std::cos(phase) - i * std::sin(phase) * std::cos(theta);
  cplx b = -i * std::sin(phase) * std::sin(theta);

  Matrix4c u = Matrix4c::Zero();
  if (expected) {
    u << a, b, 0, 0,
         -std::conj(b), std::conj(a), 0, 0,
         0, 0, a, -b,
         0, 0, std::conj(b), std::conj(a);
  } else {
    b *= std::exp(-i * std::arg(f));
    u << a, 0, 0, b,
         0, std::conj(a), -b, 0,
         0, std::conj(b), a, 0,
         -std::conj(b), 0, 0, std::conj(a);
  }
  return u;
}

}  // namespace nvdd
