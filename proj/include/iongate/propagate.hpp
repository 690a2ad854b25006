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

#include <limits>
#include <ostream>
#include <utility>
#include <vector>

#include "iongate/gatemodel.hpp"
#include "iongate/noise.hpp"
#include "iongate/qops.hpp"

namespace iongate {

/// Controls for the adaptive Dormand-Prince 5(4) integrator.
struct StepPolicy {
  // Upper bound on the step; 0 means 2 pi / (20 w_fastest) of the schedule. The
  // automatic cap always applies, so a larger value here has no effect.
  double dt_max = 0.0;
  double rtol = 1e-12;
  double atol = 1e-14;
  // Remove spin-independent linear drives exactly by working in a frame displaced
  // by their classical response. Spin observables are unaffected.
  bool displaced_frame = true;
  // Population allowed in the top two Fock levels at any step; <= 0 disables the
  // check (e.g. for propagating operator columns that start near the edge).
  double truncation_tolerance = 1e-8;
  double norm_tolerance = 1e-9;
  double positivity_floor = -1e-8;
  std::vector<double> sample_times;
  // Stop here instead of at the schedule's end (negative: run to the end).
  double until = -1.0;
};

struct StateSample {
  double t = 0.0;
  SpinMotionState state;  // in the propagation frame
  Complex displacement{0.0, 0.0};
};

struct PropagationResult {
  // State in the propagation frame: the lab-frame state is D(displacement)
  // applied to it. With displaced_frame = false, displacement is 0.
  SpinMotionState final_state;
  Complex displacement{0.0, 0.0};
  std::vector<StateSample> samples;
  long step_count = 0;
  long rejected_steps = 0;
  double max_step_error_estimate = 0.0;
  double norm_error = 0.0;
  double max_truncation_tail = 0.0;

  // D(displacement) applied on the truncated space. Only meaningful when the
  // displacement and the state both sit well inside the truncation.
  SpinMotionState lab_state() const;
};

// Throws InvariantViolation on norm drift beyond policy.norm_tolerance,
// TruncationError on truncation-health failure, std::invalid_argument on a
// mixed initial state or dimension mismatch.
PropagationResult evolve_schrodinger(const HamiltonianSchedule& h, const SpinMotionState& psi0,
                                     const StepPolicy& policy = {});

// rho' = -i[H, rho] + sum_k D[L_k] rho with the channels' jump operators; static
// shifts enter through H. Pure inputs are converted to density matrices.
PropagationResult evolve_lindblad(const HamiltonianSchedule& h, const SpinMotionState& rho0,
                                  const std::vector<NoiseChannel>& channels,
                                  const StepPolicy& policy = {});

// Full propagator on the truncated space (lab frame). Columns near the top of
// the Fock space are distorted by truncation; compare low-n blocks only.
ComplexOperator propagate_unitary(const HamiltonianSchedule& h, int n_max,
                                  StepPolicy policy = {});

// <n|U|n> on the spin register, propagated from spin basis (x) |n>.
ComplexOperator propagate_spin_block(const HamiltonianSchedule& h, int n_max,
                                     const StepPolicy& policy = {}, int fock_index = 0);

// Rows/columns with Fock index <= n_keep of a full-space operator.
ComplexOperator fock_block(const ComplexOperator& op, const HilbertSpace& space, int n_keep);

// --- Closed forms -----------------------------------------------------------

// (t - sin(Delta t) / Delta) / Delta
double magnus_phase_function(double Delta, double t);
// (exp(-i Delta t) - 1) / Delta, the unit-force displacement of the gate schedule.
Complex unit_displacement(double Delta, double t);

// Second-order Magnus propagator of build_ideal_gate_hamiltonian at time t,
// exp(beta B a^dag - beta^* B^dag a - i B B^dag g(t)), built per sigma_alpha
// branch from exact displacement matrix elements.
ComplexOperator analytic_gate_propagator(const GateConfig& cfg, double t, int n_max);

// exp(i t_g / Delta [omega_rsb^2 sigma_z (a^dag a + 1/2) + omega_rsb omega_e sigma_x])
// with t_g = 2 pi N / Delta.
ComplexOperator analytic_micromotion_propagator(double omega_rsb, double omega_e, double Delta,
                                                int n_loops, int n_max);

// Rotation vector v (U = exp(i v . sigma) up to phase) of a 2x2 near-unitary,
// after projecting onto the closest unitary.
std::array<double, 3> rotation_generator(const ComplexOperator& u2);

struct PhaseSpaceTrajectory {
  int branch = +1;  // sigma_alpha eigenvalue
  std::vector<double> t;
  std::vector<Complex> alpha;
  double geometric_phase = 0.0;  // closed form at the final sample
  double area_phase = 0.0;       // Im sum alpha_k^* alpha_{k+1}
};

std::pair<PhaseSpaceTrajectory, PhaseSpaceTrajectory> phase_space_trajectories(
    const GateConfig& cfg, int n_samples = 20001);
// Same, for the schedule build_gate_hamiltonian(cfg, Delta, t_g).
std::pair<PhaseSpaceTrajectory, PhaseSpaceTrajectory> phase_space_trajectories(
    const GateConfig& cfg, double Delta, double t_g, int n_samples = 20001);

void write_trajectory_csv(std::ostream& out,
                          const std::pair<PhaseSpaceTrajectory, PhaseSpaceTrajectory>& traj);

// max |integral of the Raise-coefficient spin matrices| over [t0, t1], i.e. the
// net first-order displacement generated in that window.
double displacement_residual(const HamiltonianSchedule& h, double t0, double t1);

// Propagates each schedule from motional |0>, checks every segment between
// breakpoints closes its loop, and returns the ordered product of spin blocks
// (last schedule leftmost). Throws InvariantViolation for a non-closing segment.
ComplexOperator compose_spin_echo_sequence(const std::vector<HamiltonianSchedule>& ops,
                                           int n_max = 12, const StepPolicy& policy = {});

}  // namespace iongate
