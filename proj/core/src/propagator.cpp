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

#include "nvdd/propagator.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "nvdd/parallel.hpp"

namespace nvdd {

namespace {

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix2c nv_drive(double phase) {
  return std::cos(phase) * spin_half::x() + std::sin(phase) * spin_half::y();
}

// Eigendecomposition of a time-independent segment generator, reused for
// every segment sharing it.
class SegmentGenerator {
 public:
  explicit SegmentGenerator(const Matrix4c& h) : solver_(h) {}

  Matrix4c evolve(double t) const {
    const auto& v = solver_.eigenvectors();
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -solver_.eigenvalues()(i) * t);
    return v * phases.asDiagonal() * v.adjoint();
  }

 private:
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver_;
};

}  // namespace

Matrix4c expm_hermitian(const Matrix4c& h, double t) { return SegmentGenerator(h).evolve(t); }

Matrix4c unitary_power(const Matrix4c& u, long long n) {
  if (n == 0) return Matrix4c::Identity();
  if (n < 0) return unitary_power(u.adjoint(), -n);
  Eigen::ComplexSchur<Matrix4c> schur(u);
  const Matrix4c& q = schur.matrixU();
  const Matrix4c& t = schur.matrixT();
  Eigen::Vector4cd phases;
  const double count = static_cast<double>(n);
  for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, count * std::arg(t(i, i)));
  return q * phases.asDiagonal() * q.adjoint();
}

double unitarity_defect(const Matrix4c& u) {
  return (u.adjoint() * u - Matrix4c::Identity()).cwiseAbs().maxCoeff();
}

Matrix4c static_hamiltonian(const SpinTarget& target, bool include_a_par) {
  const NuclearHamiltonians h =
      include_a_par ? zeeman_hamiltonians(target) : average_basis_hamiltonians(target, false);
  Matrix4c out = Matrix4c::Zero();
  out.block<2, 2>(0, 0) = h.h1;
  out.block<2, 2>(2, 2) = h.h0;
  return out;
}

Matrix4c one_period_unitary(const SpinTarget& target, const PulseSequence& seq, bool include_a_par) {
  const Matrix4c h_static = static_hamiltonian(target, include_a_par);
  const SegmentGenerator free_evolution(h_static);

  struct PulseGenerator {
    double phase;
    double rabi;
    SegmentGenerator generator;
  };
  std::vector<PulseGenerator> cache;
  cache.reserve(seq.size());
  auto pulse_generator = [&](double phase, double rabi) -> const SegmentGenerator& {
    for (const auto& c : cache)
      if (c.phase == phase && c.rabi == rabi) return c.generator;
    cache.push_back({phase, rabi, SegmentGenerator(h_static + rabi * kron(nv_drive(phase), spin_half::identity()))});
    return cache.back().generator;
  };

  Matrix4c u = Matrix4c::Identity();
  double cursor = 0.0;
  const auto pulses = seq.pulses();
  for (std::size_t m = 0; m < pulses.size(); ++m) {
    const Pulse& p = pulses[m];
    const double phase = seq.effective_phase(m);
    const double start = p.center - 0.5 * p.duration;
    if (start > cursor) u = free_evolution.evolve(start - cursor) * u;
    if (p.duration > 0.0) {
      u = pulse_generator(phase, p.rabi).evolve(p.duration) * u;
    } else {
      const Matrix2c flip = cplx(0.0, -1.0) * 2.0 * nv_drive(phase);
      u = kron(flip, spin_half::identity()) * u;
    }
    cursor = p.center + 0.5 * p.duration;
  }
  if (seq.period() > cursor) u = free_evolution.evolve(seq.period() - cursor) * u;
  return u;
}

double nv_coherence(const Matrix4c& u) {
  const Matrix4c sx = kron(spin_half::x(), spin_half::identity());
  const Matrix4c rho0 = 0.25 * kron(Matrix2c::Identity() + pauli::x(), Matrix2c::Identity());
  const Matrix4c rho = u * rho0 * u.adjoint();
  // Tr[S_x rho_0] = 1/2 sets the normalization.
  return 2.0 * (sx * rho).trace().real();
}

std::string to_string(Abscissa a) {
  switch (a) {
    case Abscissa::period:
      return "period_s";
    case Abscissa::pulse_count:
      return "pulse_count";
    case Abscissa::global_phase:
      return "global_phase_rad";
  }
  return "unknown";
}

std::string to_string(TraceMethod m) {
  switch (m) {
    case TraceMethod::exact:
      return "exact";
    case TraceMethod::analytic_expected:
      return "analytic-expected";
    case TraceMethod::analytic_spurious:
      return "analytic-spurious";
    case TraceMethod::floquet_stroboscopic:
      return "floquet-stroboscopic";
  }
  return "unknown";
}

CoherenceTrace coherence_trace(std::span<const SpinTarget> targets, const TraceRequest& request) {
  if (targets.empty()) throw ValidationError("coherence trace needs at least one target");
  if (request.abscissa != Abscissa::pulse_count && request.pulse_count < 0) {
    throw ValidationError("pulse count must be >= 0");
  }

  auto evaluate = [&](std::size_t i) {
    const double x = request.grid[i];
    double period = request.period;
    long long count = request.pulse_count;
    SequenceFamily family = request.family;
    switch (request.abscissa) {
      case Abscissa::period:
        period = x;
        break;
      case Abscissa::pulse_count:
        count = std::llround(x);
        break;
      case Abscissa::global_phase:
        family.global_phase = x;
        break;
    }
    const PulseSequence seq = family.at_period(period);
    double value = 1.0;
    for (const SpinTarget& t : targets) {
      value *= nv_coherence(unitary_power(one_period_unitary(t, seq, request.include_a_par), count));
    }
    return value;
  };

  CoherenceTrace trace;
  trace.abscissa = request.abscissa;
  trace.method = TraceMethod::exact;
  trace.x = request.grid;
  trace.coherence = parallel_map(request.grid.size(), request.threads, evaluate);
  trace.parameters = {{"pulse_count", static_cast<double>(request.pulse_count)},
                      {"period_s", request.period},
                      {"rabi_rad_s", request.family.rabi},
                      {"pulse_duration_s", request.family.duration},
                      {"global_phase_rad", request.family.global_phase},
                      {"include_a_par", request.include_a_par ? 1.0 : 0.0},
                      {"targets", static_cast<double>(targets.size())}};
  return trace;
}

CoherenceTrace pulse_number_scan(std::span<const SpinTarget> targets, const PulseSequence& seq,
                                 std::span<const long long> counts, bool include_a_par) {
  std::vector<Matrix4c> period_unitaries;
  for (const SpinTarget& t : targets) period_unitaries.push_back(one_period_unitary(t, seq, include_a_par));
  CoherenceTrace trace;
  trace.abscissa = Abscissa::pulse_count;
  trace.method = TraceMethod::exact;
  for (long long n : counts) {
    if (n < 0) throw ValidationError("pulse count must be >= 0");
    double value = 1.0;
    for (const Matrix4c& u : period_unitaries) value *= nv_coherence(unitary_power(u, n));
    trace.x.push_back(static_cast<double>(n));
    trace.coherence.push_back(value);
  }
  trace.parameters = {{"period_s", seq.period()},
                      {"global_phase_rad", seq.global_phase()},
                      {"include_a_par", include_a_par ? 1.0 : 0.0},
                      {"targets", static_cast<double>(targets.size())}};
  return trace;
}

}  // namespace nvdd
