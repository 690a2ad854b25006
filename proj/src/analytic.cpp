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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iongate/csv.hpp"
#include "iongate/errors.hpp"
#include "iongate/propagate.hpp"

namespace iongate {

double magnus_phase_function(double Delta, double t) {
  return (t - std::sin(Delta * t) / Delta) / Delta;
}

Complex unit_displacement(double Delta, double t) {
  return (std::exp(-kI * (Delta * t)) - 1.0) / Delta;
}

ComplexOperator analytic_gate_propagator(const GateConfig& cfg, double t, int n_max) {
  cfg.validate();
  if (!(cfg.omega_E > 0.0)) throw ConfigError("the closure detuning needs omega_E > 0");
  const HilbertSpace space{1, n_max};
  space.validate();
  const double Delta = cfg.detuning();
  const Complex beta = unit_displacement(Delta, t);
  const double g = magnus_phase_function(Delta, t);
  const ComplexOperator sigma = cfg.sigma_alpha();
  const Complex e_field = cfg.omega_E * std::exp(kI * cfg.phi);

  ComplexOperator u = ComplexOperator::Zero(space.dim(), space.dim());
  for (int branch : {+1, -1}) {
    const ComplexOperator projector = 0.5 * (identity2() + branch * sigma);
    const Complex b = branch * cfg.omega_p + e_field;
    u += std::exp(-kI * (std::norm(b) * g)) *
         kron(projector, displacement_operator(b * beta, n_max));
  }
  return u;
}

ComplexOperator analytic_micromotion_propagator(double omega_rsb, double omega_e, double Delta,
                                                int n_loops, int n_max) {
  if (!(Delta > 0.0) || n_loops < 1) throw std::invalid_argument("invalid micromotion parameters");
  const HilbertSpace space{1, n_max};
  space.validate();
  const double t_g = kTwoPi * n_loops / Delta;
  const ComplexOperator number_plus_half =
      motion_matrix(Motion::Number, n_max) +
      0.5 * ComplexOperator::Identity(space.fock_dim(), space.fock_dim());
  const ComplexOperator generator =
      (t_g / Delta) *
      (omega_rsb * omega_rsb * kron(pauli_z(), number_plus_half) +
       omega_rsb * omega_e *
           kron(pauli_x(), ComplexOperator::Identity(space.fock_dim(), space.fock_dim())));
  return matrix_exponential(generator, kI);
}

std::array<double, 3> rotation_generator(const ComplexOperator& u2) {
  if (u2.rows() != 2 || u2.cols() != 2) throw std::invalid_argument("expected a 2x2 matrix");
  Eigen::JacobiSVD<ComplexOperator> svd(u2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexOperator u = svd.matrixU() * svd.matrixV().adjoint();
  u /= std::sqrt(u.determinant());
  if ((u.trace()).real() < 0.0) u = -u;
  const double c = 0.5 * u.trace().real();
  const std::array<double, 3> s{0.5 * (u * pauli_x()).trace().imag(),
                                0.5 * (u * pauli_y()).trace().imag(),
                                0.5 * (u * pauli_z()).trace().imag()};
  const double sn = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  if (sn == 0.0) return {0.0, 0.0, 0.0};
  const double angle = std::atan2(sn, c);
  return {angle * s[0] / sn, angle * s[1] / sn, angle * s[2] / sn};
}

std::pair<PhaseSpaceTrajectory, PhaseSpaceTrajectory> phase_space_trajectories(
    const GateConfig& cfg, int n_samples) {
  cfg.validate();
  if (!(cfg.omega_E > 0.0)) throw ConfigError("the closure detuning needs omega_E > 0");
  return phase_space_trajectories(cfg, cfg.detuning(), cfg.gate_time(), n_samples);
}

std::pair<PhaseSpaceTrajectory, PhaseSpaceTrajectory> phase_space_trajectories(
    const GateConfig& cfg, double Delta, double t_g, int n_samples) {
  cfg.validate();
  if (n_samples < 2) throw std::invalid_argument("need at least two trajectory samples");
  if (!(Delta > 0.0) || !(t_g > 0.0)) {
    throw std::invalid_argument("trajectory detuning and duration must be positive");
  }
  const Complex e_field = cfg.omega_E * std::exp(kI * cfg.phi);

  auto branch = [&](int sign) {
    PhaseSpaceTrajectory tr;
    tr.branch = sign;
    const Complex b = sign * cfg.omega_p + e_field;
    tr.t.resize(n_samples);
    tr.alpha.resize(n_samples);
    for (int k = 0; k < n_samples; ++k) {
      const double t = k == n_samples - 1 ? t_g : t_g * k / (n_samples - 1);
      tr.t[k] = t;
      tr.alpha[k] = b * unit_displacement(Delta, t);
    }
    tr.geometric_phase = -std::norm(b) * magnus_phase_function(Delta, t_g);
    double area = 0.0;
    for (int k = 0; k + 1 < n_samples; ++k) area += (std::conj(tr.alpha[k]) * tr.alpha[k + 1]).imag();
    tr.area_phase = area;
    return tr;
  };
  return {branch(+1), branch(-1)};
}

void write_trajectory_csv(std::ostream& out,
                          const std::pair<PhaseSpaceTrajectory, PhaseSpaceTrajectory>& traj) {
  const auto& [plus, minus] = traj;
  if (plus.t.size() != minus.t.size()) throw std::invalid_argument("branch sample counts differ");
  out << "t,re_alpha_plus,im_alpha_plus,re_alpha_minus,im_alpha_minus\n";
  for (std::size_t k = 0; k < plus.t.size(); ++k) {
    write_csv_row(out, plus.t[k], plus.alpha[k].real(), plus.alpha[k].imag(),
                  minus.alpha[k].real(), minus.alpha[k].imag());
  }
}

namespace {

constexpr double kGaussNodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                   0.9602898564975363};
constexpr double kGaussWeights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                     0.1012285362903763};

// Coefficient of a^dag as a spin matrix at time t.
ComplexOperator raise_coefficient(const HamiltonianSchedule& h, double t) {
  const int s_dim = 1 << h.n_qubits;
  ComplexOperator r = ComplexOperator::Zero(s_dim, s_dim);
  for (const auto& term : h.terms) {
    if (term.motion == Motion::Raise) r += term.coefficient(t) * term.spin;
    if (term.motion == Motion::Lower && term.add_conjugate) {
      r += std::conj(term.coefficient(t)) * term.spin.adjoint();
    }
  }
  return r;
}

}  // namespace

double displacement_residual(const HamiltonianSchedule& h, double t0, double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("empty integration window");
  const double w = std::max(h.fastest_frequency(), kTwoPi / (t1 - t0));
  const int panels = static_cast<int>(std::ceil(8.0 * w * (t1 - t0) / kTwoPi)) + 4;
  const double width = (t1 - t0) / panels;
  const int s_dim = 1 << h.n_qubits;
  ComplexOperator total = ComplexOperator::Zero(s_dim, s_dim);
  double magnitude = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = t0 + (p + 0.5) * width;
    for (int i = 0; i < 4; ++i) {
      for (int sign : {-1, 1}) {
        const double t = mid + sign * 0.5 * width * kGaussNodes[i];
        const ComplexOperator r = raise_coefficient(h, t);
        const double wt = 0.5 * width * kGaussWeights[i];
        total += wt * r;
        magnitude += wt * r.cwiseAbs().maxCoeff();
      }
    }
  }
  if (magnitude == 0.0) return 0.0;
  return total.cwiseAbs().maxCoeff() / magnitude;
}

ComplexOperator compose_spin_echo_sequence(const std::vector<HamiltonianSchedule>& ops, int n_max,
                                           const StepPolicy& policy) {
  if (ops.empty()) throw std::invalid_argument("empty operation sequence");
  const int n_qubits = ops.front().n_qubits;
  const int s_dim = 1 << n_qubits;
  ComplexOperator total = ComplexOperator::Identity(s_dim, s_dim);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const HamiltonianSchedule& h = ops[k];
    if (h.n_qubits != n_qubits) throw std::invalid_argument("operations act on different registers");
    std::vector<double> edges{0.0};
    for (double b : h.breakpoints)
      if (b > 0.0 && b < h.duration) edges.push_back(b);
    edges.push_back(h.duration);
    std::sort(edges.begin(), edges.end());
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      const double residual = displacement_residual(h, edges[s], edges[s + 1]);
      if (residual > 1e-9) {
        std::ostringstream msg;
        msg << "segment " << s << " of operation " << k
            << " does not close its phase-space loop (relative residual " << residual << ")";
        throw InvariantViolation(msg.str());
      }
    }
    total = propagate_spin_block(h, n_max, policy) * total;
  }
  return total;
}

}  // namespace iongate
