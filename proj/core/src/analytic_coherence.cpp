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

#include "nvdd/analytic_coherence.hpp"

#include <cmath>
#include <numeric>

#include "nvdd/floquet.hpp"

namespace nvdd {

std::string to_string(DipKind kind) {
  return kind == DipKind::expected ? "expected" : "spurious";
}

double DipModel::epsilon(double period) const {
  return 0.5 * std::hypot(detuning(period), coupling);
}

double DipModel::n_p_max() const { return kPi / (coupling * t_dip); }

double DipModel::width() const { return 2.0 * coupling * t_dip / omega_av; }

bool DipModel::in_validity_window(double period) const {
  return std::abs(detuning(period)) <= 10.0 * coupling;
}

namespace {

DipModel model_from(const SpinTarget& target, const PulseSequence& seq0, double global_phase,
                    int k, DipKind kind) {
  const HarmonicCoefficients c = harmonic_coefficients(seq0, k);
  const cplx f = kind == DipKind::expected ? c.fz : c.fperp();
  if (std::abs(f) <= kCoefficientZero)
    throw NoResonanceError("no " + to_string(kind) + " dip at harmonic " + std::to_string(k));
  DipModel m;
  m.kind = kind;
  m.k = k;
  m.omega_av = target.omega_av();
  m.coupling = std::abs(target.a_perp() * f);
  m.phi_perp = kind == DipKind::spurious ? std::arg(f) : 0.0;
  m.global_phase = global_phase;
  m.t_dip = dip_period(target, k);
  return m;
}

}  // namespace

DipModel make_dip_model(const SpinTarget& target, const SequenceFamily& family, int k,
                        DipKind kind) {
  const double t_dip = dip_period(target, k);
  return model_from(target, family.with_global_phase(0.0).at_period(t_dip), family.global_phase, k,
                    kind);
}

DipModel make_dip_model(const SpinTarget& target, const PulseSequence& seq, int k, DipKind kind) {
  if (k < 1) throw ValidationError("harmonic k must be >= 1");
  return model_from(target, seq.with_global_phase(0.0), seq.global_phase(), k, kind);
}

double two_level_coherence(double detuning, double coupling, long long n_p, double period,
                           double scale) {
  const double c2 = coupling * coupling;
  const double denom = detuning * detuning + c2;
  if (denom == 0.0) return 1.0;
  // (eps^2 - detuning^2 / 4) / eps^2 with eps^2 = denom / 4
  const double bracket = c2 / denom;
  const double s = std::sin(static_cast<double>(n_p) * 0.5 * std::sqrt(denom) * period);
  return 1.0 - 2.0 * bracket * s * s * scale;
}

double expected_coherence(const DipModel& model, long long n_p, double period) {
  if (model.kind != DipKind::expected) throw ValidationError("model is not an expected dip");
  return two_level_coherence(model.detuning(period), model.coupling, n_p, period);
}

double spurious_coherence(const DipModel& model, long long n_p, double period) {
  if (model.kind != DipKind::spurious) throw ValidationError("model is not a spurious dip");
  const double c = std::cos(model.phi_perp + model.global_phase);
  return two_level_coherence(model.detuning(period), model.coupling, n_p, period, c * c);
}

double dip_envelope(const DipModel& model, double period) {
  if (model.kind != DipKind::spurious) throw ValidationError("model is not a spurious dip");
  const double d = model.detuning(period);
  const double c2 = model.coupling * model.coupling;
  const double cs = std::cos(model.phi_perp + model.global_phase);
  return 1.0 - 2.0 * c2 / (d * d + c2) * cs * cs;
}

PulseNumberOptimum optimal_pulse_number(const DipModel& model) {
  if (!(model.coupling > 0.0)) throw NoResonanceError("zero coupling");
  PulseNumberOptimum out;
  out.value = model.n_p_max();
  out.nearest = std::max<long long>(1, std::llround(out.value));
  return out;
}

double suppression_phase(const DipModel& model) {
  const double x = -model.phi_perp + 0.5 * kPi;
  return x - kPi * std::ceil((x - 0.5 * kPi) / kPi);
}

CoherenceTrace analytic_trace(const DipModel& model, std::span<const double> periods, long long n_p) {
  CoherenceTrace tr;
  tr.abscissa = Abscissa::period;
  tr.method = model.kind == DipKind::expected ? TraceMethod::analytic_expected
                                              : TraceMethod::analytic_spurious;
  int outside = 0;
  for (double t : periods) {
    tr.x.push_back(t);
    tr.coherence.push_back(model.kind == DipKind::expected ? expected_coherence(model, n_p, t)
                                                           : spurious_coherence(model, n_p, t));
    if (!model.in_validity_window(t)) ++outside;
  }
  tr.parameters = {{"k", model.k},
                   {"pulse_count", static_cast<double>(n_p)},
                   {"coupling_rad_s", model.coupling},
                   {"phi_perp_rad", model.phi_perp},
                   {"global_phase_rad", model.global_phase},
                   {"t_dip_s", model.t_dip},
                   {"points_outside_validity", outside}};
  return tr;
}

int fundamental_harmonic(const SequenceFamily& family) {
  SequenceFamily ideal = family.with_global_phase(0.0);
  ideal.duration = 0.0;
  const PulseSequence seq = ideal.at_period(1.0);
  for (int k = 1; k <= 256; ++k)
    if (std::abs(harmonic_coefficients(seq, k).fz) > kCoefficientZero) return k;
  throw NoResonanceError("sequence has no expected harmonic up to 256");
}

MimicResult mimic_analysis(const Isotope& primary, const Isotope& mimic, double b0,
                           const SequenceFamily& family, double tolerance) {
  if (!(b0 > 0.0)) throw ValidationError("field must be positive");
  if (primary.gamma() == 0.0 || mimic.gamma() == 0.0) throw ValidationError("zero gyromagnetic ratio");
  MimicResult r;
  r.primary = primary.name;
  r.mimic = mimic.name;
  r.fundamental = fundamental_harmonic(family);
  const double w_primary = std::abs(primary.gamma()) * b0;
  r.t_dip = kTwoPi * r.fundamental / w_primary;
  r.k_exact = r.fundamental * std::abs(mimic.gamma() / primary.gamma());
  r.k = static_cast<int>(std::lround(r.k_exact));
  if (r.k < 1) {
    r.reason = "mimic harmonic below 1";
    return r;
  }
  r.mismatch = std::abs(r.k_exact - r.k) / r.k;
  const int g = std::gcd(r.fundamental, r.k);
  r.ratio_num = r.fundamental / g;
  r.ratio_den = r.k / g;
  if (r.mismatch > tolerance) {
    r.reason = "no integer harmonic within tolerance";
    return r;
  }
  const HarmonicCoefficients c =
      harmonic_coefficients(family.with_global_phase(0.0).at_period(r.t_dip), r.k);
  if (std::abs(c.fperp()) <= kCoefficientZero) {
    r.reason = "harmonic carries no f_perp";
    return r;
  }
  r.found = true;
  r.phi_perp = std::arg(c.fperp());
  DipModel m;
  m.phi_perp = r.phi_perp;
  r.phi_g = suppression_phase(m);
  return r;
}

}  // namespace nvdd
