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

#include "nvdd/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nvdd {

namespace {

constexpr double kPiRotationTolerance = 1e-9;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

Matrix2c in_plane_pauli(double phi) {
  Matrix2c s;
  s << 0.0, std::polar(1.0, -phi), std::polar(1.0, phi), 0.0;
  return s;
}

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

}  // namespace

PulseSequence::PulseSequence(double period, std::vector<Pulse> pulses, double global_phase)
    : period_(period), pulses_(std::move(pulses)), global_phase_(global_phase) {
  validate_and_prepare();
}

void PulseSequence::validate_and_prepare() {
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw ValidationError(describe("sequence period must be positive", period_));
  }
  if (!std::isfinite(global_phase_)) throw ValidationError("global phase must be finite");
  std::sort(pulses_.begin(), pulses_.end(),
            [](const Pulse& a, const Pulse& b) { return a.center < b.center; });

  const double eps = 1e-12 * period_;
  double previous_end = 0.0;
  for (const Pulse& p : pulses_) {
    if (!std::isfinite(p.center) || !std::isfinite(p.phase) || !std::isfinite(p.duration)) {
      throw ValidationError("pulse parameters must be finite");
    }
    if (p.duration < 0.0) throw ValidationError(describe("pulse duration must be >= 0", p.duration));
    if (p.duration > 0.0) {
      if (!(p.rabi > 0.0)) throw ValidationError(describe("finite pulse needs rabi > 0", p.rabi));
      if (std::abs(p.rabi * p.duration - kPi) > kPiRotationTolerance * kPi) {
        throw ValidationError(describe("only pi pulses are supported; rabi * duration", p.rabi * p.duration));
      }
    }
    const double start = p.center - 0.5 * p.duration;
    const double end = p.center + 0.5 * p.duration;
    if (start < -eps || end > period_ + eps) {
      throw ValidationError(describe("pulse support leaves [0, T]; pulse center", p.center));
    }
    if (start < previous_end - eps) {
      throw ValidationError(describe("overlapping pulses near center", p.center));
    }
    previous_end = end;
  }

  frame_angles_.resize(pulses_.size());
  double accumulated = 0.0;
  for (std::size_t m = 0; m < pulses_.size(); ++m) {
    const double phi = effective_phase(m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    frame_angles_[m] = accumulated + sign * (phi + 0.5 * kPi);
    accumulated += 2.0 * sign * phi;
  }

  Matrix2c frame = Matrix2c::Identity();
  for (std::size_t m = 0; m < pulses_.size(); ++m) {
    frame = cplx(0.0, -1.0) * in_plane_pauli(effective_phase(m)) * frame;
  }
  if (std::abs(frame(0, 1)) > 1e-9 || std::abs(frame(1, 0)) > 1e-9 ||
      std::abs(frame(0, 0) - frame(1, 1)) > 1e-9) {
    throw ValidationError(
        "pulse frame is not periodic: the pi pulses of one period must compose to a multiple of "
        "the identity");
  }
  frame_phase_ = frame(0, 0);

  warnings_.clear();
  const double fz0 = fourier_coefficient(*this, Axis::z, 0).real();
  if (std::abs(fz0) > 1e-9) {
    warnings_.push_back(describe("unbalanced sequence: f_z^0 is nonzero", fz0));
  }
}

bool PulseSequence::ideal() const {
  return std::all_of(pulses_.begin(), pulses_.end(), [](const Pulse& p) { return p.duration == 0.0; });
}

PulseSequence PulseSequence::with_global_phase(double global_phase) const {
  return PulseSequence(period_, pulses_, global_phase);
}

namespace {

const std::vector<double>& phase_pattern(const std::string& name) {
  static const std::vector<double> xy8 = {0.0, kPi / 2, 0.0, kPi / 2, kPi / 2, 0.0, kPi / 2, 0.0};
  static const std::vector<double> cpmg8(8, 0.0);
  static const std::vector<double> xy4 = {0.0, kPi / 2, 0.0, kPi / 2};
  if (name == "xy8") return xy8;
  if (name == "cpmg8") return cpmg8;
  if (name == "xy4") return xy4;
  throw ValidationError("unknown builtin sequence '" + name + "' (expected xy8, cpmg8 or xy4)");
}

// Returns (rabi, duration) after applying the duration override.
std::pair<double, double> pulse_shape(double rabi, std::optional<double> duration_override) {
  if (!(rabi > 0.0) || !std::isfinite(rabi)) throw ValidationError(describe("rabi must be positive", rabi));
  if (!duration_override) return {rabi, kPi / rabi};
  const double d = *duration_override;
  if (d < 0.0 || !std::isfinite(d)) throw ValidationError(describe("pulse duration must be >= 0", d));
  if (d == 0.0) return {rabi, 0.0};
  return {kPi / d, d};
}

PulseSequence equally_spaced(const std::string& name, double tau, double rabi, double global_phase,
                             std::optional<double> duration_override) {
  const auto& phases = phase_pattern(name);
  const auto [r, d] = pulse_shape(rabi, duration_override);
  if (!(tau > d)) {
    throw ValidationError(describe("pulse spacing tau must exceed the pulse duration; tau", tau));
  }
  std::vector<Pulse> pulses;
  pulses.reserve(phases.size());
  for (std::size_t m = 0; m < phases.size(); ++m) {
    pulses.push_back({(static_cast<double>(m) + 0.5) * tau, phases[m], r, d});
  }
  return PulseSequence(tau * static_cast<double>(phases.size()), std::move(pulses), global_phase);
}

}  // namespace

PulseSequence xy8(double tau, double rabi, double global_phase, std::optional<double> duration_override) {
  return equally_spaced("xy8", tau, rabi, global_phase, duration_override);
}

PulseSequence cpmg8(double tau, double rabi, double global_phase, std::optional<double> duration_override) {
  return equally_spaced("cpmg8", tau, rabi, global_phase, duration_override);
}

PulseSequence xy4(double tau, double rabi, double global_phase, std::optional<double> duration_override) {
  return equally_spaced("xy4", tau, rabi, global_phase, duration_override);
}

PulseSequence SequenceFamily::at_period(double period) const {
  std::vector<Pulse> pulses;
  pulses.reserve(phases.size());
  for (std::size_t m = 0; m < phases.size(); ++m) {
    pulses.push_back({center_fractions[m] * period, phases[m], rabi, duration});
  }
  return PulseSequence(period, std::move(pulses), global_phase);
}

SequenceFamily SequenceFamily::with_global_phase(double phi) const {
  SequenceFamily copy = *this;
  copy.global_phase = phi;
  return copy;
}

SequenceFamily SequenceFamily::builtin(const std::string& name, double rabi, double global_phase,
                                       std::optional<double> duration_override) {
  const auto& phases = phase_pattern(name);
  const auto [r, d] = pulse_shape(rabi, duration_override);
  SequenceFamily f;
  f.name = name;
  f.phases = phases;
  f.rabi = r;
  f.duration = d;
  f.global_phase = global_phase;
  const double n = static_cast<double>(phases.size());
  for (std::size_t m = 0; m < phases.size(); ++m) {
    f.center_fractions.push_back((static_cast<double>(m) + 0.5) / n);
  }
  return f;
}

SequenceFamily SequenceFamily::from_sequence(const PulseSequence& seq, std::string name) {
  SequenceFamily f;
  f.name = std::move(name);
  f.global_phase = seq.global_phase();
  for (const Pulse& p : seq.pulses()) {
    if (!seq.pulses().empty() && (p.rabi != seq.pulses()[0].rabi || p.duration != seq.pulses()[0].duration)) {
      throw ValidationError("a sequence family needs identical pulse shapes");
    }
    f.center_fractions.push_back(p.center / seq.period());
    f.phases.push_back(p.phase);
  }
  if (!seq.pulses().empty()) {
    f.rabi = seq.pulses()[0].rabi;
    f.duration = seq.pulses()[0].duration;
  }
  return f;
}

Modulation modulation_at(const PulseSequence& seq, double t) {
  if (!(t >= 0.0 && t < seq.period())) {
    throw DomainError(describe("modulation time outside [0, T)", t));
  }
  const auto pulses = seq.pulses();
  std::size_t completed = 0;
  for (std::size_t m = 0; m < pulses.size(); ++m) {
    const Pulse& p = pulses[m];
    const double offset = t - p.center;
    const double half = 0.5 * p.duration;
    if (p.duration > 0.0 && std::abs(offset) <= half) {
      const double c = std::cos(p.rabi * offset);
      const double s = std::sin(p.rabi * offset);
      // Pulse m here is 0-based, so (-1)^(m+1) in 1-based counting.
      const double sign = (m % 2 == 0) ? -1.0 : 1.0;
      const double angle = seq.frame_angle(m);
      return {c * std::cos(angle), c * std::sin(angle), sign * s};
    }
    if (t >= p.center + half) completed = m + 1;
  }
  return {0.0, 0.0, (completed % 2 == 0) ? 1.0 : -1.0};
}

HarmonicCoefficients harmonic_coefficients(const PulseSequence& seq, int k) {
  if (k < 0) {
    const HarmonicCoefficients h = harmonic_coefficients(seq, -k);
    return {std::conj(h.fx), std::conj(h.fy), std::conj(h.fz)};
  }
  const double T = seq.period();
  const double kappa = k * seq.angular_frequency();
  const auto pulses = seq.pulses();

  HarmonicCoefficients out{0.0, 0.0, 0.0};
  auto add_free = [&](double a, double b, double sign) {
    if (b <= a) return;
    const double len = b - a;
    out.fz += sign * len * sinc(0.5 * kappa * len) * std::polar(1.0, -0.5 * kappa * (a + b));
  };

  double cursor = 0.0;
  double sign = 1.0;
  for (std::size_t m = 0; m < pulses.size(); ++m) {
    const Pulse& p = pulses[m];
    const double half = 0.5 * p.duration;
    add_free(cursor, p.center - half, sign);
    if (half > 0.0) {
      const double omega = p.rabi;
      const double minus = sinc((omega - kappa) * half);
      const double plus = sinc((omega + kappa) * half);
      const cplx shift = std::polar(1.0, -kappa * p.center);
      // int cos(W t') e^{-i kappa t'} and int sin(W t') e^{-i kappa t'} over [-h, h].
      const double cos_part = half * (minus + plus);
      const cplx sin_part = cplx(0.0, -half * (minus - plus));
      const double angle = seq.frame_angle(m);
      const double zsign = (m % 2 == 0) ? -1.0 : 1.0;
      out.fx += std::cos(angle) * cos_part * shift;
      out.fy += std::sin(angle) * cos_part * shift;
      out.fz += zsign * sin_part * shift;
    }
    cursor = p.center + half;
    sign = -sign;
  }
  add_free(cursor, T, sign);

  out.fx /= T;
  out.fy /= T;
  out.fz /= T;
  return out;
}

cplx fourier_coefficient(const PulseSequence& seq, Axis axis, int k) {
  const HarmonicCoefficients h = harmonic_coefficients(seq, k);
  switch (axis) {
    case Axis::x:
      return h.fx;
    case Axis::y:
      return h.fy;
    case Axis::z:
      return h.fz;
  }
  return {};
}

ModulationSpectrum::ModulationSpectrum(int k_max, std::vector<HarmonicCoefficients> coeffs)
    : k_max_(k_max), coeffs_(std::move(coeffs)) {}

const HarmonicCoefficients& ModulationSpectrum::at(int k) const {
  if (k < -k_max_ || k > k_max_) {
    throw DomainError("harmonic " + std::to_string(k) + " outside the computed range");
  }
  return coeffs_[static_cast<std::size_t>(k + k_max_)];
}

double ModulationSpectrum::phi_perp(int k) const {
  const cplx f = fperp(k);
  return std::abs(f) == 0.0 ? 0.0 : std::arg(f);
}

double ModulationSpectrum::parseval_sum() const {
  double sum = 0.0;
  for (const auto& h : coeffs_) sum += std::norm(h.fx) + std::norm(h.fy) + std::norm(h.fz);
  return sum;
}

ModulationSpectrum modulation_spectrum(const PulseSequence& seq, int k_max) {
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  std::vector<HarmonicCoefficients> coeffs(static_cast<std::size_t>(2 * k_max + 1));
  for (int k = 0; k <= k_max; ++k) {
    const HarmonicCoefficients h = harmonic_coefficients(seq, k);
    coeffs[static_cast<std::size_t>(k_max + k)] = h;
    coeffs[static_cast<std::size_t>(k_max - k)] = {std::conj(h.fx), std::conj(h.fy), std::conj(h.fz)};
  }
  return ModulationSpectrum(k_max, std::move(coeffs));
}

}  // namespace nvdd
