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

namespace nvdd {

/// One top-hat pi pulse. A zero duration encodes the ideal delta-pulse limit.
struct Pulse {
  double center = 0.0;    ///< s, within the period
  double phase = 0.0;     ///< rad; 0 = X, pi/2 = Y
  double rabi = 0.0;      ///< rad/s
  double duration = 0.0;  ///< s; rabi * duration = pi unless duration = 0
};

/// One period of a periodic decoupling sequence.
///
/// The global phase is kept separate from the pulse phases; the effective
/// phase of pulse m is phase_m + global_phase.
class PulseSequence {
 public:
  /// Validates and sorts the pulses. Throws ValidationError when supports
  /// overlap, leave [0, period], are not pi rotations, or when the pulse
  /// frame does not return to itself (up to a phase) after one period.
  PulseSequence(double period, std::vector<Pulse> pulses, double global_phase = 0.0);

  double period() const { return period_; }
  double angular_frequency() const { return kTwoPi / period_; }
  double global_phase() const { return global_phase_; }
  std::span<const Pulse> pulses() const { return pulses_; }
  std::size_t size() const { return pulses_.size(); }
  bool ideal() const;

  double effective_phase(std::size_t m) const { return pulses_[m].phase + global_phase_; }

  /// In-plane orientation of the rotating frame during pulse m (0-based),
  /// accumulated over the preceding pi pulses.
  double frame_angle(std::size_t m) const { return frame_angles_[m]; }

  /// Scalar c with U_p(T) = c * identity for the pulse-frame propagator.
  cplx frame_phase() const { return frame_phase_; }

  /// Non-fatal diagnostics, e.g. an unbalanced f_z (nonzero f_z^0).
  const std::vector<std::string>& warnings() const { return warnings_; }

  PulseSequence with_global_phase(double global_phase) const;

 private:
  void validate_and_prepare();

  double period_;
  std::vector<Pulse> pulses_;
  double global_phase_;
  std::vector<double> frame_angles_;
  cplx frame_phase_{1.0, 0.0};
  std::vector<std::string> warnings_;
};

/// XY8 unit: period 8 tau, pulses centered at (m - 1/2) tau with phases
/// X Y X Y Y X Y X. The pulse duration is pi / rabi unless overridden; an
/// override of zero gives delta pulses, any other override rescales the Rabi
/// frequency to keep pi rotations.
PulseSequence xy8(double tau, double rabi, double global_phase = 0.0,
                  std::optional<double> duration_override = std::nullopt);

/// Eight-pulse CPMG unit with the XY8 timing and all pulses along X.
PulseSequence cpmg8(double tau, double rabi, double global_phase = 0.0,
                    std::optional<double> duration_override = std::nullopt);

/// XY4 unit: period 4 tau, phases X Y X Y.
PulseSequence xy4(double tau, double rabi, double global_phase = 0.0,
                  std::optional<double> duration_override = std::nullopt);

/// A sequence shape that can be re-instantiated at any period, used by scans
/// over T. Pulse centers scale with the period, durations do not.
struct SequenceFamily {
  std::string name;
  std::vector<double> center_fractions;
  std::vector<double> phases;
  double rabi = 0.0;
  double duration = 0.0;
  double global_phase = 0.0;

  PulseSequence at_period(double period) const;
  SequenceFamily with_global_phase(double phi) const;

  static SequenceFamily builtin(const std::string& name, double rabi, double global_phase = 0.0,
                                std::optional<double> duration_override = std::nullopt);
  static SequenceFamily from_sequence(const PulseSequence& seq, std::string name = "custom");
};

struct Modulation {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Rotating-frame image of sigma_z at time t: f_x sigma_x + f_y sigma_y + f_z sigma_z.
/// Throws DomainError unless 0 <= t < period.
Modulation modulation_at(const PulseSequence& seq, double t);

enum class Axis { x, y, z };

/// Fourier amplitude f_i^k = (1/T) int_0^T f_i(t) exp(-i k omega t) dt,
/// evaluated in closed form segment by segment.
cplx fourier_coefficient(const PulseSequence& seq, Axis axis, int k);

struct HarmonicCoefficients {
  cplx fx;
  cplx fy;
  cplx fz;

  cplx fperp() const { return fx + cplx(0.0, 1.0) * fy; }
};

HarmonicCoefficients harmonic_coefficients(const PulseSequence& seq, int k);

/// Fourier amplitudes for k in [-k_max, k_max].
class ModulationSpectrum {
 public:
  ModulationSpectrum(int k_max, std::vector<HarmonicCoefficients> coeffs);

  int k_max() const { return k_max_; }
  const HarmonicCoefficients& at(int k) const;
  cplx fx(int k) const { return at(k).fx; }
  cplx fy(int k) const { return at(k).fy; }
  cplx fz(int k) const { return at(k).fz; }
  cplx fperp(int k) const { return at(k).fperp(); }
  double abs_fperp(int k) const { return std::abs(fperp(k)); }
  /// Phase of f_perp^k; zero when the coefficient vanishes.
  double phi_perp(int k) const;

  /// Sum over the stored harmonics of |f_x^k|^2 + |f_y^k|^2 + |f_z^k|^2.
  double parseval_sum() const;

 private:
  int k_max_;
  std::vector<HarmonicCoefficients> coeffs_;
};

/// Throws ValidationError for k_max < 1.
ModulationSpectrum modulation_spectrum(const PulseSequence& seq, int k_max);

}  // namespace nvdd
