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

#include "iongate/infidelity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <tuple>

#include "iongate/csv.hpp"
#include "iongate/errors.hpp"
#include "parallel.hpp"

namespace iongate {

StateVector target_spin_state(const GateConfig& cfg, const StateVector& psi0_spin) {
  return spin_rotation(cfg.axis, cfg.theta) * psi0_spin;
}

double spin_infidelity(const SpinMotionState& final_state, const StateVector& target_spin) {
  const ComplexOperator rho = final_state.reduced_spin();
  if (target_spin.size() != rho.rows()) {
    throw std::invalid_argument("target spin state does not match the qubit register");
  }
  return 1.0 - target_spin.dot(rho * target_spin).real();
}

double gate_infidelity(const SpinMotionState& final_state, const GateConfig& cfg,
                       const StateVector& psi0_spin) {
  return spin_infidelity(final_state, target_spin_state(cfg, psi0_spin));
}

double lambda_sq(const StateVector& psi0_spin, const Axis& axis) {
  if (psi0_spin.size() != 2) throw std::invalid_argument("lambda_sq expects a single-qubit state");
  const ComplexOperator s = pauli_along(axis);
  const double norm = psi0_spin.squaredNorm();
  const double mean = psi0_spin.dot(s * psi0_spin).real() / norm;
  return std::clamp(1.0 - mean * mean, 0.0, 1.0);
}

double analytic_infidelity(const GateConfig& cfg, const NoiseChannel& channel, int n0,
                           double lambda_sq) {
  cfg.validate();
  if (!(cfg.omega_E > 0.0)) throw ConfigError("the closure detuning needs omega_E > 0");
  channel.validate();
  if (n0 < 0) throw ConfigError("initial Fock index must be >= 0");
  const double wp = cfg.omega_p, we = cfg.omega_E, th = cfg.theta, K = cfg.K;
  const double n_term = 2.0 * n0 + 1.0;
  switch (channel.kind) {
    case NoiseKind::Heating:
      return channel.rate * std::sqrt(wp * th * th * th / (8.0 * kPi * K * we * we * we)) *
             lambda_sq;
    case NoiseKind::MotionalDephasing:
      return channel.rate * std::sqrt(wp * th * th * th / (32.0 * kPi * K * we * we * we)) *
             (n_term + 3.0 * th * we / (2.0 * kPi * K * wp)) * lambda_sq;
    case NoiseKind::StaticShift:
      return channel.rate * channel.rate * th * th / (16.0 * we * we) *
             (n_term + 2.0 * th * we / (kPi * K * wp)) * lambda_sq;
  }
  return 0.0;
}

int default_n_max(int n0) { return n0 == 0 ? 20 : std::max(20, 6 * n0); }

double numeric_infidelity(const GateConfig& cfg, const NoiseChannel& channel, int n0,
                          const StateVector& psi0_spin, const NumericOptions& options) {
  cfg.validate();
  channel.validate();
  const int n_max = options.n_max > 0 ? options.n_max : default_n_max(n0);
  const HilbertSpace space{1, n_max};
  const SpinMotionState psi0 = SpinMotionState::product(space, psi0_spin.normalized(), n0);
  const HamiltonianSchedule h = build_ideal_gate_hamiltonian(cfg);
  const StateVector psi_spin = psi0_spin.normalized();
  if (!channel.is_dissipative()) {
    const auto r = evolve_schrodinger(with_noise(h, channel), psi0, options.policy);
    return gate_infidelity(r.final_state, cfg, psi_spin);
  }
  const auto r = evolve_lindblad(h, psi0, {channel}, options.policy);
  return gate_infidelity(r.final_state, cfg, psi_spin);
}

std::vector<InfidelityReport> compare_sweep(const GateConfig& cfg, NoiseKind kind,
                                            const std::vector<double>& rates,
                                            const std::vector<int>& n0_values,
                                            const std::vector<int>& K_values,
                                            const StateVector& psi0_spin, int workers,
                                            const NumericOptions& options) {
  std::vector<InfidelityReport> jobs;
  const double l2 = lambda_sq(psi0_spin.normalized(), cfg.axis);
  for (int K : K_values) {
    for (int n0 : n0_values) {
      for (double rate : rates) {
        InfidelityReport r;
        r.channel = {kind, rate};
        r.channel.validate();
        r.K = K;
        r.n0 = n0;
        r.lambda_sq = l2;
        r.n_max = options.n_max > 0 ? options.n_max : default_n_max(n0);
        jobs.push_back(r);
      }
    }
  }
  detail::parallel_for(jobs.size(), workers, [&](std::size_t i) {
    InfidelityReport& r = jobs[i];
    GateConfig c = cfg;
    c.K = r.K;
    NumericOptions opt = options;
    opt.n_max = r.n_max;
    const auto start = std::chrono::steady_clock::now();
    r.analytic = analytic_infidelity(c, r.channel, r.n0, r.lambda_sq);
    r.numeric = numeric_infidelity(c, r.channel, r.n0, psi0_spin, opt);
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  std::sort(jobs.begin(), jobs.end(), [](const InfidelityReport& a, const InfidelityReport& b) {
    return std::make_tuple(a.K, a.n0, a.channel.rate) < std::make_tuple(b.K, b.n0, b.channel.rate);
  });
  return jobs;
}

void write_sweep_csv(std::ostream& out, const std::vector<InfidelityReport>& rows,
                     bool include_runtime) {
  out << "channel,rate,K,n0,I_analytic,I_numeric,lambda_sq,n_max";
  out << (include_runtime ? ",runtime_s\n" : "\n");
  for (const auto& r : rows) {
    if (include_runtime) {
      write_csv_row(out, noise_kind_name(r.channel.kind), r.channel.rate, r.K, r.n0, r.analytic,
                    r.numeric, r.lambda_sq, r.n_max, r.runtime_s);
    } else {
      write_csv_row(out, noise_kind_name(r.channel.kind), r.channel.rate, r.K, r.n0, r.analytic,
                    r.numeric, r.lambda_sq, r.n_max);
    }
  }
}

}  // namespace iongate
