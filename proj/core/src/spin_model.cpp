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

#include "nvdd/spin_model.hpp"

#include <cmath>
#include <string>

namespace nvdd {

double wrap_angle(double angle) {
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -kPi) wrapped += kTwoPi;
  return wrapped;
}

namespace pauli {
Matrix2c x() { return (Matrix2c() << 0.0, 1.0, 1.0, 0.0).finished(); }
Matrix2c y() { return (Matrix2c() << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0).finished(); }
Matrix2c z() { return (Matrix2c() << 1.0, 0.0, 0.0, -1.0).finished(); }
}  // namespace pauli

namespace spin_half {
Matrix2c identity() { return Matrix2c::Identity(); }
Matrix2c x() { return 0.5 * pauli::x(); }
Matrix2c y() { return 0.5 * pauli::y(); }
Matrix2c z() { return 0.5 * pauli::z(); }
}  // namespace spin_half

SpinTarget target_from_larmor(double larmor, double a_x, double a_z) {
  if (!std::isfinite(larmor) || !std::isfinite(a_x) || !std::isfinite(a_z)) {
    throw ValidationError("spin target parameters must be finite");
  }
  SpinTarget t;
  t.larmor_ = larmor;
  t.a_x_ = a_x;
  t.a_z_ = a_z;
  t.omega_av_ = std::hypot(larmor + 0.5 * a_z, 0.5 * a_x);
  if (!(t.omega_av_ > 0.0)) {
    throw ValidationError("degenerate target: omega_av = 0, dip periods are undefined");
  }
  // atan2 keeps H_av = +omega_av I_z even when 2 gamma_n B0 + A_z < 0.
  t.theta_av_ = wrap_angle(std::atan2(a_x, 2.0 * larmor + a_z));
  const double c = std::cos(t.theta_av_);
  const double s = std::sin(t.theta_av_);
  t.a_perp_ = 0.5 * (a_x * c - a_z * s);
  t.a_par_ = 0.5 * (a_z * c + a_x * s);
  return t;
}

SpinTarget make_target(double gamma_n, double b0, double a_x, double a_z) {
  if (!std::isfinite(gamma_n) || !std::isfinite(b0)) {
    throw ValidationError("gyromagnetic ratio and field must be finite");
  }
  return target_from_larmor(gamma_n * b0, a_x, a_z);
}

SpinTarget target_from_average(double omega_av, double a_perp, double a_par) {
  if (!(omega_av > 0.0) || !std::isfinite(omega_av)) {
    throw ValidationError("degenerate target: omega_av must be positive");
  }
  const double theta = std::atan2(a_perp, omega_av - a_par);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double a_x = 2.0 * (a_perp * c + a_par * s);
  const double a_z = 2.0 * (a_par * c - a_perp * s);
  const double larmor = omega_av * c - 0.5 * a_z;
  return target_from_larmor(larmor, a_x, a_z);
}

double dip_period(const SpinTarget& target, int k) {
  if (k < 1) {
    throw ValidationError("invalid harmonic k = " + std::to_string(k) + " (k must be >= 1)");
  }
  return kTwoPi * k / target.omega_av();
}

NuclearHamiltonians zeeman_hamiltonians(const SpinTarget& target) {
  NuclearHamiltonians h;
  h.h0 = target.larmor() * spin_half::z();
  h.h1 = h.h0 + target.a_x() * spin_half::x() + target.a_z() * spin_half::z();
  return h;
}

NuclearHamiltonians average_basis_hamiltonians(const SpinTarget& target, bool include_a_par) {
  const Matrix2c h_av = target.omega_av() * spin_half::z();
  Matrix2c v = target.a_perp() * spin_half::x();
  if (include_a_par) v += target.a_par() * spin_half::z();
  return {h_av - v, h_av + v};
}

}  // namespace nvdd
