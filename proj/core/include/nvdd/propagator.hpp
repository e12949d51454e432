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
#include <utility>
#include <vector>

#include "nvdd/common.hpp"
#include "nvdd/pulses.hpp"
#include "nvdd/spin_model.hpp"

namespace nvdd {

// Two-qubit basis used throughout: |nv> (x) |nucleus>, index = 2 * nv + nucleus.
// NV index 0 is the sigma_z = +1 state, which carries the m_s = 1 nuclear
// Hamiltonian, so that the static part reads I (x) H_av + sigma_z (x) V.

/// exp(-i H t) for a Hermitian 4x4 generator.
Matrix4c expm_hermitian(const Matrix4c& h, double t);

/// U^n for a unitary U through its Schur form, exact in n up to rounding.
Matrix4c unitary_power(const Matrix4c& u, long long n);

/// max |U^dagger U - 1| over all elements.
double unitarity_defect(const Matrix4c& u);

/// Static NV-nucleus Hamiltonian |1><1| (x) H1 + |0><0| (x) H0. Without
/// include_a_par the nuclear part is the average-basis form with A_par dropped;
/// with it, the NV-frame Zeeman-basis Hamiltonians are used unchanged.
Matrix4c static_hamiltonian(const SpinTarget& target, bool include_a_par);

/// Exact one-period propagator: free evolution under the static Hamiltonian
/// concatenated with top-hat pulse segments (delta pulses as instantaneous
/// pi rotations).
Matrix4c one_period_unitary(const SpinTarget& target, const PulseSequence& seq, bool include_a_par = false);

/// NV coherence 2 Tr[S_x U rho_0 U^dagger] for rho_0 = (I + sigma_x)/4 (x) I,
/// normalized so free evolution without coupling gives 1.
double nv_coherence(const Matrix4c& u);

enum class Abscissa { period, pulse_count, global_phase };
enum class TraceMethod { exact, analytic_expected, analytic_spurious, floquet_stroboscopic };

std::string to_string(Abscissa a);
std::string to_string(TraceMethod m);

struct CoherenceTrace {
  Abscissa abscissa = Abscissa::period;
  TraceMethod method = TraceMethod::exact;
  std::vector<double> x;
  std::vector<double> coherence;
  std::vector<std::pair<std::string, double>> parameters;
};

/// Scan specification for exact traces. The unused one of (period,
/// pulse_count, global phase) is taken from the fields below; the family's
/// own global phase applies unless the abscissa is global_phase.
struct TraceRequest {
  Abscissa abscissa = Abscissa::period;
  std::vector<double> grid;
  SequenceFamily family;
  double period = 0.0;
  long long pulse_count = 1;
  bool include_a_par = false;
  unsigned threads = 1;
};

/// Exact coherence over the requested grid. Independent targets combine
/// multiplicatively.
CoherenceTrace coherence_trace(std::span<const SpinTarget> targets, const TraceRequest& request);

/// Coherence against repetition count at a fixed sequence.
CoherenceTrace pulse_number_scan(std::span<const SpinTarget> targets, const PulseSequence& seq,
                                 std::span<const long long> counts, bool include_a_par = false);

}  // namespace nvdd
