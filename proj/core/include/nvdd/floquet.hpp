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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nvdd/common.hpp"
#include "nvdd/pulses.hpp"
#include "nvdd/spin_model.hpp"

namespace nvdd {

// Dressed basis |nv, nucleus, l> with l in [-L, L]. Within each l the four
// states follow the propagator ordering: index = 4 (l + L) + 2 nv + nucleus,
// nv 0 being the sigma_z = +1 state and nucleus 0 the +omega_av / 2 level.

/// Truncation max(16, 4 ceil(omega_av T / 2 pi)).
int default_truncation(const SpinTarget& target, double period);

struct FloquetMatrix {
  MatrixXc h;
  int truncation = 0;
  double period = 0.0;
  double omega = 0.0;
  double omega_av = 0.0;

  int dimension() const { return static_cast<int>(h.rows()); }
  static int index(int truncation, int l, int nv, int nucleus) {
    return 4 * (l + truncation) + 2 * nv + nucleus;
  }
};

/// Assembles the truncated Floquet Hamiltonian of the toggling-frame
/// Hamiltonian omega_av I_z + A_perp (f(t) . sigma) (x) I_x over one period of
/// seq. Throws ValidationError when the truncation cannot hold the
/// fundamental resonance, i.e. L < ceil(omega_av / omega) + 2.
FloquetMatrix build_floquet(const SpinTarget& target, const PulseSequence& seq,
                            std::optional<int> truncation = std::nullopt);

/// max |H - H^dagger| over all elements, relative to the largest |H| element.
double hermiticity_defect(const FloquetMatrix& fm);

/// Folds a quasienergy into (-omega/2, omega/2].
double fold_quasienergy(double energy, double omega);

/// Four physical quasienergies, folded and sorted. Replicas are removed by
/// taking one period of the central spectrum starting in its widest gap.
std::vector<double> folded_quasienergies(const FloquetMatrix& fm);

/// Quasienergies from the eigenphases of the exact one-period propagator
/// (A_par dropped), folded and sorted.
std::vector<double> monodromy_quasienergies(const SpinTarget& target, const PulseSequence& seq);

struct FloquetSpectrum {
  std::vector<double> periods;
  /// folded[i] holds the four folded quasienergies at periods[i] (rad/s).
  std::vector<std::vector<double>> folded;
  /// Continuous epsilon * T per level, matched point to point by nearest
  /// neighbour over replicas 2 pi m.
  std::vector<std::vector<double>> tracked_phase;
};

/// Quasienergy spectra over a period grid, rebuilding the sequence at each T.
/// A truncation of 0 selects the default per point.
FloquetSpectrum quasienergy_scan(const SpinTarget& target, const SequenceFamily& family,
                                 std::span<const double> periods, int truncation = 0,
                                 unsigned threads = 1);

enum class GapKind { expected, spurious, closed };
std::string to_string(GapKind kind);

struct CrossingGap {
  int k = 0;
  double t_dip = 0.0;
  double t_min = 0.0;        ///< period at the numerically smallest splitting
  double gap = 0.0;          ///< rad/s
  double predicted = 0.0;    ///< rad/s, from the modulation coefficients
  GapKind kind = GapKind::closed;
  bool coincidence = false;  ///< both f_z^k and f_perp^k nonzero
  int truncation = 0;
  cplx fz;
  cplx fperp;
};

/// Magnitude below which a modulation coefficient counts as zero.
inline constexpr double kCoefficientZero = 1e-10;

/// Smallest splitting of the four levels meeting near k omega / 2, searched
/// by golden section over T_dip (1 +- 5 |A_perp f^k| / omega_av), or +- 1% for a
/// closed crossing. The family
/// is rebuilt at each trial period. The truncation is grown until the gap is
/// stable to 1e-6 omega_av against L + 4.
CrossingGap crossing_gap(const SpinTarget& target, const SequenceFamily& family, int k);

/// Middle splitting of the four levels nearest k omega / 2 for one matrix.
double level_splitting(const FloquetMatrix& fm, int k);

/// Two-level stroboscopic propagator over n_p periods at the period of seq.
/// Uses the f_z^k form when f_z^k is nonzero, the f_perp^k form otherwise,
/// with the coupling phase phi_perp^k + global phase. Returned in the
/// propagator basis, up to the scalar frame phase.
/// Throws NoResonanceError when both coefficients vanish.
Matrix4c stroboscopic_propagator(const SpinTarget& target, const PulseSequence& seq, int k,
                                 long long n_p);

}  // namespace nvdd
