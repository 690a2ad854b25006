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

#include <ostream>
#include <vector>

#include "iongate/gatemodel.hpp"
#include "iongate/noise.hpp"
#include "iongate/propagate.hpp"
#include "iongate/qops.hpp"

namespace iongate {

// exp(-i theta sigma_alpha / 2) |psi0>
StateVector target_spin_state(const GateConfig& cfg, const StateVector& psi0_spin);

// 1 - sum_n <target, n| rho |target, n>, i.e. the spin population missing from
// the target state after tracing out the motion.
double spin_infidelity(const SpinMotionState& final_state, const StateVector& target_spin);

// spin_infidelity against exp(-i theta sigma_alpha / 2) |psi0_spin>.
double gate_infidelity(const SpinMotionState& final_state, const GateConfig& cfg,
                       const StateVector& psi0_spin);

// <sigma_alpha^2> - <sigma_alpha>^2 of a normalized spin state.
double lambda_sq(const StateVector& psi0_spin, const Axis& axis);

// Closed-form infidelity of the gate under one channel, starting in Fock state n0.
double analytic_infidelity(const GateConfig& cfg, const NoiseChannel& channel, int n0,
                           double lambda_sq);

struct NumericOptions {
  int n_max = 0;  // 0 selects default_n_max(n0)
  StepPolicy policy{};
};

// 20 for n0 = 0; otherwise max(20, 6 n0), e.g. 60 for n0 = 10.
int default_n_max(int n0);

// Propagates the gate with the channel realized as a Lindblad term (heating,
// dephasing) or an added g_d a^dag a (static shift) and returns gate_infidelity.
double numeric_infidelity(const GateConfig& cfg, const NoiseChannel& channel, int n0,
                          const StateVector& psi0_spin, const NumericOptions& options = {});

struct InfidelityReport {
  NoiseChannel channel;
  int K = 1;
  int n0 = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double lambda_sq = 0.0;
  int n_max = 0;
  double runtime_s = 0.0;

  // The closed forms are perturbative; above 0.1 they are not meaningful.
  bool analytic_valid() const { return analytic <= 0.1; }
};

// Every (K, n0, rate) combination, computed on up to `workers` threads and
// returned sorted by K, then n0, then rate.
std::vector<InfidelityReport> compare_sweep(const GateConfig& cfg, NoiseKind kind,
                                            const std::vector<double>& rates,
                                            const std::vector<int>& n0_values,
                                            const std::vector<int>& K_values,
                                            const StateVector& psi0_spin, int workers = 1,
                                            const NumericOptions& options = {});

// Columns: channel, rate, K, n0, I_analytic, I_numeric, lambda_sq, n_max, runtime_s.
// Wall-clock times vary between runs; pass include_runtime = false for a file that
// is reproducible byte for byte.
void write_sweep_csv(std::ostream& out, const std::vector<InfidelityReport>& rows,
                     bool include_runtime = true);

}  // namespace iongate
