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

#include "nvdd/common.hpp"

namespace nvdd {

/// A nuclear spin-1/2 coupled to the NV electron spin.
///
/// The hyperfine vector lies in the x-z plane of the NV frame, A = (A_x, 0, A_z),
/// and the static field is along the NV axis. Everything is stored as angular
/// frequency (rad/s). The derived quantities describe the NV-state-averaged
/// nuclear Hamiltonian H_av = omega_av I_z and the coupling
/// V = A_perp I_x + A_par I_z expressed in its eigenbasis, whose quantization
/// axis is tilted from the NV axis by theta_av.
class SpinTarget {
 public:
  /// Nuclear Larmor frequency gamma_n * B0.
  double larmor() const { return larmor_; }
  double a_x() const { return a_x_; }
  double a_z() const { return a_z_; }
  double omega_av() const { return omega_av_; }
  double a_perp() const { return a_perp_; }
  double a_par() const { return a_par_; }
  double theta_av() const { return theta_av_; }

  friend SpinTarget make_target(double gamma_n, double b0, double a_x, double a_z);
  friend SpinTarget target_from_larmor(double larmor, double a_x, double a_z);

 private:
  SpinTarget() = default;

  double larmor_ = 0.0;
  double a_x_ = 0.0;
  double a_z_ = 0.0;
  double omega_av_ = 0.0;
  double a_perp_ = 0.0;
  double a_par_ = 0.0;
  double theta_av_ = 0.0;
};

/// Builds a target from the gyromagnetic ratio (rad s^-1 T^-1), the field (T)
/// and the NV-frame hyperfine components (rad/s).
/// Throws ValidationError for a degenerate target (omega_av = 0).
SpinTarget make_target(double gamma_n, double b0, double a_x, double a_z);

/// Same as make_target with the Larmor frequency gamma_n * B0 given directly.
SpinTarget target_from_larmor(double larmor, double a_x, double a_z);

/// Builds the target whose average-basis description is (omega_av, a_perp, a_par).
/// The NV-frame parameters are recovered by inverting the average-basis
/// rotation, so the result round-trips through make_target exactly.
SpinTarget target_from_average(double omega_av, double a_perp, double a_par = 0.0);

/// Resonant period 2 pi k / omega_av of the k-th harmonic.
double dip_period(const SpinTarget& target, int k);

/// Nuclear Hamiltonians conditioned on the NV state.
struct NuclearHamiltonians {
  Matrix2c h0;  ///< m_s = 0
  Matrix2c h1;  ///< m_s = 1

  Matrix2c average() const { return 0.5 * (h0 + h1); }
  Matrix2c interaction() const { return 0.5 * (h1 - h0); }
};

/// H0 = gamma_n B0 I_z and H1 = gamma_n B0 I_z + A_x I_x + A_z I_z in the NV frame.
NuclearHamiltonians zeeman_hamiltonians(const SpinTarget& target);

/// Conditioned Hamiltonians expressed in the average-Hamiltonian eigenbasis:
/// H_av = omega_av I_z and V = A_perp I_x (+ A_par I_z when requested).
/// With include_a_par these are unitarily equivalent to zeeman_hamiltonians.
NuclearHamiltonians average_basis_hamiltonians(const SpinTarget& target, bool include_a_par);

namespace spin_half {
Matrix2c identity();
Matrix2c x();  ///< sigma_x / 2
Matrix2c y();  ///< sigma_y / 2
Matrix2c z();  ///< sigma_z / 2
}  // namespace spin_half

namespace pauli {
Matrix2c x();
Matrix2c y();
Matrix2c z();
}  // namespace pauli

}  // namespace nvdd
