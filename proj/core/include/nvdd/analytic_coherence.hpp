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

#include <span>
#include <string>
#include <vector>

#include "nvdd/common.hpp"
#include "nvdd/isotopes.hpp"
#include "nvdd/propagator.hpp"
#include "nvdd/pulses.hpp"
#include "nvdd/spin_model.hpp"

namespace nvdd {

enum class DipKind { expected, spurious };
std::string to_string(DipKind kind);

/// Isolated two-level description of the k-th resonance. The modulation
/// coefficient is frozen at T_dip; phi_perp is taken with zero global phase
/// and the global phase enters only through cos^2(phi_perp + phi_g).
struct DipModel {
  DipKind kind = DipKind::expected;
  int k = 0;
  double omega_av = 0.0;
  double coupling = 0.0;      ///< |A_perp f^k|, rad/s
  double phi_perp = 0.0;      ///< arg f_perp^k at zero global phase
  double global_phase = 0.0;
  double t_dip = 0.0;

  double detuning(double period) const { return omega_av - k * kTwoPi / period; }
  /// 1/2 sqrt(detuning^2 + coupling^2)
  double epsilon(double period) const;
  /// pi / (coupling T_dip)
  double n_p_max() const;
  /// 2 coupling T_dip / omega_av
  double width() const;
  /// |detuning| <= 10 coupling
  bool in_validity_window(double period) const;
};

/// Builds the model from the family instantiated at T_dip.
/// Throws NoResonanceError when the selected coefficient vanishes.
DipModel make_dip_model(const SpinTarget& target, const SequenceFamily& family, int k, DipKind kind);

/// Same, with the coefficient taken from seq at its own period.
DipModel make_dip_model(const SpinTarget& target, const PulseSequence& seq, int k, DipKind kind);

/// 1 - 2 [(eps^2 - detuning^2 / 4) / eps^2] sin^2(n_p eps T) scale.
/// Shared kernel of both closed forms.
double two_level_coherence(double detuning, double coupling, long long n_p, double period,
                           double scale = 1.0);

double expected_coherence(const DipModel& model, long long n_p, double period);
double spurious_coherence(const DipModel& model, long long n_p, double period);
/// N_p independent lower envelope of spurious_coherence.
double dip_envelope(const DipModel& model, double period);

struct PulseNumberOptimum {
  double value = 0.0;
  long long nearest = 0;
};
PulseNumberOptimum optimal_pulse_number(const DipModel& model);

/// phi_g = -phi_perp + pi/2 reduced into (-pi/2, pi/2]; turns the dip off.
double suppression_phase(const DipModel& model);

/// Closed-form trace over a period grid. Records the number of points that
/// fall outside the validity window as a parameter.
CoherenceTrace analytic_trace(const DipModel& model, std::span<const double> periods, long long n_p);

/// Smallest k >= 1 with f_z^k != 0 for the delta-pulse limit of the family.
int fundamental_harmonic(const SequenceFamily& family);

struct MimicResult {
  bool found = false;
  std::string primary;
  std::string mimic;
  int fundamental = 0;       ///< expected harmonic of the primary
  double k_exact = 0.0;      ///< fundamental * |gamma_mimic| / |gamma_primary|
  int k = 0;                 ///< nearest integer harmonic of the mimic
  double mismatch = 0.0;     ///< |k_exact - k| / k
  int ratio_num = 0;         ///< primary signal appears as (num/den) x harmonic
  int ratio_den = 1;
  double t_dip = 0.0;        ///< primary fundamental period, s
  double phi_perp = 0.0;
  double phi_g = 0.0;        ///< suppressing global phase
  std::string reason;
};

/// Looks for a spurious harmonic of `mimic` landing on the expected
/// fundamental of `primary` (far-field, omega_av = |gamma| B0). A coincidence
/// requires the integer harmonic to lie within `tolerance` (relative) and to
/// carry a nonzero f_perp.
MimicResult mimic_analysis(const Isotope& primary, const Isotope& mimic, double b0,
                           const SequenceFamily& family, double tolerance = 0.02);

}  // namespace nvdd
