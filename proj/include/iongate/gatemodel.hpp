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

#pragma once

#include <functional>
#include <vector>

#include "iongate/qops.hpp"

namespace iongate {

/// Parameters of the abstract geometric phase gate. All rates in rad/s.
struct GateConfig {
  double omega_p = kTwoPi * 2e3;  // spin-dependent force
  double omega_E = kTwoPi * 1e5;  // spin-independent (E-field) force
  double theta = kPi / 2;         // target rotation angle
  int K = 1;                      // phase-space loops
  double phi = 0.0;               // E-field phase
  Axis axis{0.0, 1.0, 0.0};       // sigma_alpha = axis . sigma

  // sqrt(8 pi K omega_p omega_E / theta)
  double detuning() const;
  // 2 pi K / detuning()
  double gate_time() const;
  // theta / gate_time()
  double effective_rabi() const;

  ComplexOperator sigma_alpha() const { return pauli_along(axis); }

  // Throws ConfigError for non-positive rates, theta <= 0, K < 1 or a zero axis.
  void validate() const;
};

using Envelope = std::function<double(double)>;

/// sin^2 on/off ramps of length t_r around a flat top; envelope(0) = 0,
/// envelope(t_r) = 1. With t_r = 0 the envelope is 1 on [0, t_total].
class RampEnvelope {
 public:
  RampEnvelope(double t_r, double t_total);

  double operator()(double t) const;
  double ramp_time() const { return t_r_; }
  double total_time() const { return t_total_; }

 private:
  double t_r_;
  double t_total_;
};

/// amplitude * envelope(t) * exp(i frequency t) * (spin (x) motion), plus its
/// Hermitian conjugate when add_conjugate is set. Terms without a conjugate
/// must be Hermitian on their own (real amplitude, zero frequency).
struct ScheduleTerm {
  ComplexOperator spin;
  Motion motion = Motion::Identity;
  Complex amplitude{1.0, 0.0};
  double frequency = 0.0;
  Envelope envelope;  // empty means 1
  bool add_conjugate = true;

  Complex coefficient(double t) const;
};

/// Time-dependent Hamiltonian on n_qubits qubits and one motional mode.
struct HamiltonianSchedule {
  int n_qubits = 1;
  double duration = 0.0;
  std::vector<ScheduleTerm> terms;
  // Times in (0, duration) where some envelope has a kink; integrators never
  // step across them.
  std::vector<double> breakpoints;

  // Dense H(t) on the space with the given truncation.
  ComplexOperator at(double t, int n_max) const;
  // Largest |frequency| among the terms (0 for static schedules).
  double fastest_frequency() const;
  // Number of operator summands once conjugates are expanded.
  int summand_count() const;
};

// H = B a^dag exp(-i detuning t) + h.c. with B = omega_p sigma_alpha + omega_E e^{i phi}.
// The E-field term is omitted when omega_E == 0.
HamiltonianSchedule build_gate_hamiltonian(const GateConfig& cfg, double detuning,
                                           double duration);

// The gate above at detuning = cfg.detuning() for duration cfg.gate_time(). Loops
// are traversed so that the propagator at t_g is exp(-i theta sigma_alpha / 2).
HamiltonianSchedule build_ideal_gate_hamiltonian(const GateConfig& cfg);

enum class Zone { Target, Spectator };

const char* zone_name(Zone zone);

/// Microwave + rf-gradient + E-field drive of two ions in separate wells.
struct PhysicalDriveConfig {
  double omega_g = kTwoPi * 2e3;              // gradient Rabi frequency
  double omega_rf_gradient = kTwoPi * 5e6;    // gradient frequency
  double omega_target = kTwoPi * 6.5e6;       // target motional frequency
  double omega_spectator = kTwoPi * 6.3e6;    // spectator motional frequency
  double omega_E_target = kTwoPi * 1e5;
  double omega_E_spectator = 0.0;
  double bessel_argument = 1.8412;            // 4 omega_mu / delta
  double theta = kPi / 2;
  int K = 1;
  double Delta = 0.0;                         // 0 selects closure_detuning()
  double t_r = 15e-6;
  double duration = 0.0;                      // 0 selects nominal_duration()

  // omega_g * J1(bessel_argument)
  double effective_omega_p() const;
  // Closure detuning of the effective gate, sqrt(8 pi K Omega_p^eff Omega_E / theta).
  double closure_detuning() const;
  double gate_detuning() const { return Delta > 0.0 ? Delta : closure_detuning(); }
  // (omega_target - omega_rf_gradient) - Delta
  double delta() const;
  double omega_mu() const { return bessel_argument * delta() / 4.0; }
  // 2 pi K / Delta + 2 t_r
  double nominal_duration() const;
  double total_duration() const { return duration > 0.0 ? duration : nominal_duration(); }
  double motional_frequency(Zone zone) const;
  double e_field(Zone zone) const;

  void validate() const;
};

// One zone of the bichromatic-microwave drive, in that zone's rotating frame:
// 2 omega_mu e(t) cos(delta t) sigma_x
//   + [2 omega_g e(t) cos(omega_rf t) sigma_z a^dag e^{i w t}
//      + 2 omega_E sin((omega_target - Delta) t) a^dag e^{i w t} + h.c.]
// with w the zone's motional frequency. The E-field has no envelope.
HamiltonianSchedule build_microwave_hamiltonian(const PhysicalDriveConfig& drive, Zone zone);

// i (omega_g e J1(z e) sigma_y + omega_E) a^dag e^{i Delta t} + h.c. for the target
// zone, with the same ramp e(t) and duration as the full model.
HamiltonianSchedule build_effective_hamiltonian(const PhysicalDriveConfig& drive);

// Red sideband plus E-field, omega_rsb (sigma_- a^dag e^{i Delta t} + h.c.)
// + omega_e (a^dag e^{i Delta t} + h.c.), run for N loops (t_g = 2 pi N / Delta).
HamiltonianSchedule build_micromotion_hamiltonian(double omega_rsb, double omega_e, double Delta,
                                                  int n_loops = 1);

/// Participation of each ion in one motional mode.
struct ModeDescriptor {
  std::vector<double> projections;

  static ModeDescriptor center_of_mass(int n_ions);
  static ModeDescriptor stretch();  // two ions, e = (-1, 1)

  // Rescales so that max |e_n| = 1 (the default) or so that sum e_n^2 = 1.
  ModeDescriptor normalized(bool orthonormal = false) const;
};

// sum_n e_n sigma_alpha,n on an n-qubit register.
ComplexOperator collective_operator(const ModeDescriptor& mode, const Axis& axis);

/// One piece of a segmented collective drive.
struct CollectiveSegment {
  double duration = 0.0;
  int detuning_sign = +1;
  int spin_sign = +1;
};

// Sum over segments of [omega_p s S + omega_e](a^dag e^{i s_d Delta (t - t0)} + h.c.)
// where s, s_d are the segment's signs and t0 its start time.
HamiltonianSchedule build_collective_hamiltonian(const ModeDescriptor& mode, const Axis& axis,
                                                 double omega_p, double omega_e, double Delta,
                                                 const std::vector<CollectiveSegment>& segments);

// Two K/2-loop segments, the second with (Delta, S) -> (-Delta, -S). Requires even K.
std::vector<CollectiveSegment> echo_segments(double Delta, int K);

// E-field amplitude that makes the echoed sequence equal exp(-i theta S / 2).
double collective_e_field(double theta, double Delta, int K, double omega_p);

}  // namespace iongate
