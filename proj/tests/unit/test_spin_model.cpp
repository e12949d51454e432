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
#include <Eigen/Eigenvalues>

#include "nvdd/spin_model.hpp"

using namespace nvdd;

namespace {

// Eigenvalues of H_av and the transverse coupling in its eigenbasis, by
// direct diagonalization.
struct AvOracle {
  double omega_av;
  double a_perp;
  double a_par;
};

AvOracle diagonalize(const SpinTarget& t) {
  const NuclearHamiltonians h = zeeman_hamiltonians(t);
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(h.average());
  const Matrix2c v = es.eigenvectors().adjoint() * h.interaction() * es.eigenvectors();
  // eigenvalues ascending: index 1 is the upper (+omega_av/2) level
  return {es.eigenvalues()[1] - es.eigenvalues()[0], 2.0 * std::abs(v(0, 1)),
          std::abs((v(1, 1) - v(0, 0)).real())};
}

}  // namespace

TEST_CASE("zero hyperfine gives the bare Larmor frequency") {
  const SpinTarget t = make_target(hz_to_rad(1e6), 2.0, 0.0, 0.0);
  CHECK(t.omega_av() == doctest::Approx(hz_to_rad(2e6)).epsilon(1e-15));
  CHECK(t.a_perp() == 0.0);
  CHECK(t.theta_av() == 0.0);
}

TEST_CASE("tilted hyperfine matches diagonalization of H_av") {
  const SpinTarget t = target_from_larmor(hz_to_rad(2e6), hz_to_rad(200e3), 0.0);
  const AvOracle o = diagonalize(t);
  CHECK(t.omega_av() == doctest::Approx(o.omega_av).epsilon(1e-13));
  CHECK(std::abs(t.a_perp()) == doctest::Approx(o.a_perp).epsilon(1e-12));
  CHECK(std::abs(t.a_par()) == doctest::Approx(o.a_par).epsilon(1e-9));
  CHECK(rad_to_hz(t.omega_av()) == doctest::Approx(2.0025e6).epsilon(1e-4));
  CHECK(rad_to_hz(std::abs(t.a_perp())) == doctest::Approx(99.88e3).epsilon(1e-4));
  CHECK(t.theta_av() == doctest::Approx(std::atan(0.05)).epsilon(1e-12));
}

TEST_CASE("parallel-only hyperfine") {
  const SpinTarget t = target_from_larmor(hz_to_rad(1e6), 0.0, hz_to_rad(100e3));
  CHECK(rad_to_hz(t.omega_av()) == doctest::Approx(1.05e6).epsilon(1e-14));
  CHECK(t.theta_av() == 0.0);
  CHECK(t.a_perp() == doctest::Approx(0.0));
  CHECK(rad_to_hz(t.a_par()) == doctest::Approx(50e3).epsilon(1e-12));
}

TEST_CASE("pre-reduced targets round trip") {
  const double w = hz_to_rad(405.4e3), a = hz_to_rad(31e3), ap = hz_to_rad(7e3);
  const SpinTarget t = target_from_average(w, a, ap);
  CHECK(t.omega_av() == doctest::Approx(w).epsilon(1e-13));
  CHECK(t.a_perp() == doctest::Approx(a).epsilon(1e-12));
  CHECK(t.a_par() == doctest::Approx(ap).epsilon(1e-12));
  const AvOracle o = diagonalize(t);
  CHECK(o.omega_av == doctest::Approx(w).epsilon(1e-12));
  CHECK(o.a_perp == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("theta_av vanishes continuously with A_x") {
  double prev = 1.0;
  for (double ax : {1e5, 1e3, 1e1, 1e-1}) {
    const SpinTarget t = target_from_larmor(hz_to_rad(1e6), hz_to_rad(ax), 0.0);
    CHECK(t.theta_av() > 0.0);
    CHECK(t.theta_av() < prev);
    prev = t.theta_av();
  }
  CHECK(prev < 1e-7);
}

TEST_CASE("average-basis Hamiltonians are unitarily equivalent to Zeeman ones") {
  const SpinTarget t = target_from_larmor(hz_to_rad(2e6), hz_to_rad(300e3), hz_to_rad(-120e3));
  const NuclearHamiltonians z = zeeman_hamiltonians(t);
  const NuclearHamiltonians a = average_basis_hamiltonians(t, true);
  for (const auto& [x, y] : {std::pair{z.h0, a.h0}, std::pair{z.h1, a.h1}}) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> ex(x), ey(y);
    CHECK((ex.eigenvalues() - ey.eigenvalues()).cwiseAbs().maxCoeff() < 1e-6);
  }
  const NuclearHamiltonians r = average_basis_hamiltonians(t, false);
  CHECK(std::abs(r.interaction()(0, 0)) < 1e-9);
  CHECK(std::abs(r.average()(0, 0).real() - 0.5 * t.omega_av()) < 1e-6);
}

TEST_CASE("dip period and validation") {
  const SpinTarget t = target_from_average(hz_to_rad(2e6), hz_to_rad(200e3));
  CHECK(dip_period(t, 4) == doctest::Approx(2e-6).epsilon(1e-14));
  CHECK_THROWS_AS(dip_period(t, 0), ValidationError);
  CHECK_THROWS_AS(make_target(hz_to_rad(1e6), 0.0, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(target_from_average(0.0, 1.0), ValidationError);
}

TEST_CASE("spin-half operators") {
  CHECK((spin_half::x() * spin_half::x() - 0.25 * spin_half::identity()).norm() < 1e-15);
  const Matrix2c comm = spin_half::x() * spin_half::y() - spin_half::y() * spin_half::x();
  CHECK((comm - cplx(0, 1) * spin_half::z()).norm() < 1e-15);
  CHECK((pauli::z() - 2.0 * spin_half::z()).norm() == 0.0);
}
