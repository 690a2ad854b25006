// Copyright 2026 The ion-gate-sim Authors
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

#include "iongate/gatemodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iongate/errors.hpp"

namespace iongate {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

double GateConfig::detuning() const {
  return std::sqrt(8.0 * kPi * K * omega_p * omega_E / theta);
}

double GateConfig::gate_time() const { return kTwoPi * K / detuning(); }

double GateConfig::effective_rabi() const { return theta / gate_time(); }

void GateConfig::validate() const {
  require(finite_positive(omega_p), "omega_p must be positive");
  require(std::isfinite(omega_E) && omega_E >= 0.0, "omega_E must be >= 0");
  require(finite_positive(theta), "theta must be positive");
  require(K >= 1, "K must be >= 1");
  require(std::isfinite(phi), "phi must be finite");
  const double n2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
  require(std::isfinite(n2) && n2 > 0.0, "axis must be a nonzero vector");
}

RampEnvelope::RampEnvelope(double t_r, double t_total) : t_r_(t_r), t_total_(t_total) {
  require(t_r >= 0.0 && std::isfinite(t_r), "ramp time must be >= 0");
  require(finite_positive(t_total), "envelope duration must be positive");
  require(2.0 * t_r <= t_total * (1.0 + 1e-12), "ramps longer than the pulse");
}

double RampEnvelope::operator()(double t) const {
  if (t <= 0.0 || t >= t_total_) return t_r_ > 0.0 ? 0.0 : 1.0;
  if (t_r_ <= 0.0) return 1.0;
  const double edge = std::min(t, t_total_ - t);
  if (edge >= t_r_) return 1.0;
  const double s = std::sin(kPi * edge / (2.0 * t_r_));
  return s * s;
}

Complex ScheduleTerm::coefficient(double t) const {
  Complex c = amplitude;
  if (frequency != 0.0) c *= std::exp(kI * (frequency * t));
  if (envelope) c *= envelope(t);
  return c;
}

ComplexOperator HamiltonianSchedule::at(double t, int n_max) const {
  const HilbertSpace space{n_qubits, n_max};
  space.validate();
  ComplexOperator h = ComplexOperator::Zero(space.dim(), space.dim());
  for (const auto& term : terms) {
    const Complex c = term.coefficient(t);
    if (c == 0.0) continue;
    const ComplexOperator op = embed(space, term.spin, term.motion);
    h += c * op;
    if (term.add_conjugate) h += std::conj(c) * op.adjoint();
  }
  return h;
}

double HamiltonianSchedule::fastest_frequency() const {
  double w = 0.0;
  for (const auto& term : terms) w = std::max(w, std::abs(term.frequency));
  return w;
}

int HamiltonianSchedule::summand_count() const {
  int n = 0;
  for (const auto& term : terms) n += term.add_conjugate ? 2 : 1;
  return n;
}

HamiltonianSchedule build_gate_hamiltonian(const GateConfig& cfg, double detuning,
                                           double duration) {
  cfg.validate();
  require(finite_positive(duration), "schedule duration must be positive");
  require(std::isfinite(detuning), "detuning must be finite");
  HamiltonianSchedule h;
  h.n_qubits = 1;
  h.duration = duration;
  h.terms.push_back({cfg.sigma_alpha(), Motion::Raise, cfg.omega_p, -detuning, {}, true});
  if (cfg.omega_E != 0.0) {
    h.terms.push_back({identity2(), Motion::Raise, cfg.omega_E * std::exp(kI * cfg.phi),
                       -detuning, {}, true});
  }
  return h;
}

HamiltonianSchedule build_ideal_gate_hamiltonian(const GateConfig& cfg) {
  cfg.validate();
  require(cfg.omega_E > 0.0, "the closure detuning needs omega_E > 0");
  return build_gate_hamiltonian(cfg, cfg.detuning(), cfg.gate_time());
}

const char* zone_name(Zone zone) { return zone == Zone::Target ? "target" : "spectator"; }

double PhysicalDriveConfig::effective_omega_p() const {
  return omega_g * std::cyl_bessel_j(1.0, bessel_argument);
}

double PhysicalDriveConfig::closure_detuning() const {
  return std::sqrt(8.0 * kPi * K * effective_omega_p() * omega_E_target / theta);
}

double PhysicalDriveConfig::delta() const {
  return (omega_target - omega_rf_gradient) - gate_detuning();
}

double PhysicalDriveConfig::nominal_duration() const {
  return kTwoPi * K / gate_detuning() + 2.0 * t_r;
}

double PhysicalDriveConfig::motional_frequency(Zone zone) const {
  return zone == Zone::Target ? omega_target : omega_spectator;
}

double PhysicalDriveConfig::e_field(Zone zone) const {
  return zone == Zone::Target ? omega_E_target : omega_E_spectator;
}

void PhysicalDriveConfig::validate() const {
  require(finite_positive(omega_g), "omega_g must be positive");
  require(finite_positive(omega_rf_gradient), "omega_rf_gradient must be positive");
  require(finite_positive(omega_target), "omega_target must be positive");
  require(finite_positive(omega_spectator), "omega_spectator must be positive");
  require(finite_positive(omega_E_target), "omega_E_target must be positive");
  require(std::isfinite(omega_E_spectator) && omega_E_spectator >= 0.0,
          "omega_E_spectator must be >= 0");
  require(std::isfinite(bessel_argument) && bessel_argument >= 0.0,
          "bessel_argument must be >= 0");
  require(finite_positive(theta), "theta must be positive");
  require(K >= 1, "K must be >= 1");
  require(std::isfinite(Delta) && Delta >= 0.0, "Delta must be >= 0");
  require(std::isfinite(t_r) && t_r >= 0.0, "t_r must be >= 0");
  require(std::isfinite(duration) && duration >= 0.0, "duration must be >= 0");
  require(effective_omega_p() > 0.0 || Delta > 0.0,
          "J1(bessel_argument) must be positive when Delta is derived");
  require(delta() != 0.0, "microwave detuning delta vanishes");
  require(2.0 * t_r < total_duration(), "ramps longer than the pulse");
}

HamiltonianSchedule build_microwave_hamiltonian(const PhysicalDriveConfig& drive, Zone zone) {
  drive.validate();
  const double total = drive.total_duration();
  const Envelope ramp = RampEnvelope(drive.t_r, total);
  const double w = drive.motional_frequency(zone);
  const double x = drive.omega_target - drive.gate_detuning();
  const double e_field = drive.e_field(zone);

  HamiltonianSchedule h;
  h.n_qubits = 1;
  h.duration = total;
  if (drive.omega_mu() != 0.0) {
    h.terms.push_back({pauli_x(), Motion::Identity, drive.omega_mu(), drive.delta(), ramp, true});
  }
  // 2 cos(w_g t) e^{i w t} = e^{i (w + w_g) t} + e^{i (w - w_g) t}
  h.terms.push_back(
      {pauli_z(), Motion::Raise, drive.omega_g, w + drive.omega_rf_gradient, ramp, true});
  h.terms.push_back(
      {pauli_z(), Motion::Raise, drive.omega_g, w - drive.omega_rf_gradient, ramp, true});
  if (e_field != 0.0) {
    // 2 sin(x t) e^{i w t} = -i e^{i (w + x) t} + i e^{i (w - x) t}
    h.terms.push_back({identity2(), Motion::Raise, -kI * e_field, w + x, {}, true});
    h.terms.push_back({identity2(), Motion::Raise, kI * e_field, w - x, {}, true});
  }
  if (drive.t_r > 0.0) h.breakpoints = {drive.t_r, total - drive.t_r};
  return h;
}

HamiltonianSchedule build_effective_hamiltonian(const PhysicalDriveConfig& drive) {
  drive.validate();
  const double total = drive.total_duration();
  const RampEnvelope ramp(drive.t_r, total);
  const double z = drive.bessel_argument;
  const Envelope force = [ramp, z](double t) {
    const double e = ramp(t);
    return e * std::cyl_bessel_j(1.0, z * e);
  };
  HamiltonianSchedule h;
  h.n_qubits = 1;
  h.duration = total;
  h.terms.push_back(
      {pauli_y(), Motion::Raise, kI * drive.omega_g, drive.gate_detuning(), force, true});
  h.terms.push_back(
      {identity2(), Motion::Raise, kI * drive.omega_E_target, drive.gate_detuning(), {}, true});
  if (drive.t_r > 0.0) h.breakpoints = {drive.t_r, total - drive.t_r};
  return h;
}

HamiltonianSchedule build_micromotion_hamiltonian(double omega_rsb, double omega_e, double Delta,
                                                  int n_loops) {
  require(std::isfinite(omega_rsb) && std::isfinite(omega_e), "rates must be finite");
  require(finite_positive(Delta), "Delta must be positive");
  require(n_loops >= 1, "loop count must be >= 1");
  HamiltonianSchedule h;
  h.n_qubits = 1;
  h.duration = kTwoPi * n_loops / Delta;
  h.terms.push_back({sigma_minus(), Motion::Raise, omega_rsb, Delta, {}, true});
  if (omega_e != 0.0) h.terms.push_back({identity2(), Motion::Raise, omega_e, Delta, {}, true});
  return h;
}

ModeDescriptor ModeDescriptor::center_of_mass(int n_ions) {
  require(n_ions >= 1, "mode needs at least one ion");
  return {std::vector<double>(static_cast<std::size_t>(n_ions), 1.0)};
}

ModeDescriptor ModeDescriptor::stretch() { return {{-1.0, 1.0}}; }

ModeDescriptor ModeDescriptor::normalized(bool orthonormal) const {
  require(!projections.empty(), "mode has no projections");
  double scale = 0.0;
  for (double e : projections) {
    require(std::isfinite(e), "non-finite mode projection");
    scale = orthonormal ? scale + e * e : std::max(scale, std::abs(e));
  }
  if (orthonormal) scale = std::sqrt(scale);
  require(scale > 0.0, "mode projections are all zero");
  ModeDescriptor out = *this;
  for (double& e : out.projections) e /= scale;
  return out;
}

ComplexOperator collective_operator(const ModeDescriptor& mode, const Axis& axis) {
  const int n = static_cast<int>(mode.projections.size());
  require(n >= 1 && n <= 8, "mode must cover 1 to 8 ions");
  const ComplexOperator s = pauli_along(axis);
  ComplexOperator out = ComplexOperator::Zero(1 << n, 1 << n);
  for (int q = 0; q < n; ++q) out += mode.projections[q] * on_qubit(n, q, s);
  return out;
}

HamiltonianSchedule build_collective_hamiltonian(const ModeDescriptor& mode, const Axis& axis,
                                                 double omega_p, double omega_e, double Delta,
                                                 const std::vector<CollectiveSegment>& segments) {
  require(std::isfinite(omega_p) && std::isfinite(omega_e), "rates must be finite");
  require(finite_positive(Delta), "Delta must be positive");
  require(!segments.empty(), "collective drive needs at least one segment");
  const ComplexOperator s_op = collective_operator(mode, axis);
  const int n = static_cast<int>(mode.projections.size());
  const ComplexOperator id = ComplexOperator::Identity(1 << n, 1 << n);

  HamiltonianSchedule h;
  h.n_qubits = n;
  double t0 = 0.0;
  for (const auto& seg : segments) {
    require(finite_positive(seg.duration), "segment duration must be positive");
    require(std::abs(seg.detuning_sign) == 1 && std::abs(seg.spin_sign) == 1,
            "segment signs must be +1 or -1");
    const double t1 = t0 + seg.duration;
    const Envelope window = [t0, t1](double t) { return t >= t0 && t < t1 ? 1.0 : 0.0; };
    const double w = seg.detuning_sign * Delta;
    // Oscillation phase referenced to the segment start.
    const Complex phase = std::exp(-kI * (w * t0));
    h.terms.push_back({seg.spin_sign * omega_p * s_op, Motion::Raise, phase, w, window, true});
    if (omega_e != 0.0) h.terms.push_back({omega_e * id, Motion::Raise, phase, w, window, true});
    if (t0 > 0.0) h.breakpoints.push_back(t0);
    t0 = t1;
  }
  h.duration = t0;
  return h;
}

std::vector<CollectiveSegment> echo_segments(double Delta, int K) {
  require(finite_positive(Delta), "Delta must be positive");
  require(K >= 2 && K % 2 == 0, "the echo needs an even loop count K");
  const double half = kTwoPi * (K / 2) / Delta;
  return {{half, +1, +1}, {half, -1, -1}};
}

double collective_e_field(double theta, double Delta, int K, double omega_p) {
  require(finite_positive(Delta) && K >= 1 && omega_p != 0.0, "invalid collective parameters");
  return -theta * Delta * Delta / (8.0 * kPi * K * omega_p);
}

}  // namespace iongate
