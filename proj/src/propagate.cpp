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

#include "iongate/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "integrator.hpp"
#include "iongate/errors.hpp"

namespace iongate {

namespace {

using detail::FrameModel;
using detail::MotionGroups;
using detail::OdeState;

enum class Layout { Vectors, Density };

struct DriveOutcome {
  OdeState y;
  detail::StepperLog log;
  double max_tail = 0.0;
  std::vector<StateSample> samples;
};

double top_population(const HilbertSpace& space, const ComplexOperator& x, Layout layout) {
  const int f = space.fock_dim();
  double worst = 0.0;
  if (layout == Layout::Density) {
    for (int s = 0; s < space.spin_dim(); ++s)
      worst += std::abs(x(s * f + f - 1, s * f + f - 1).real()) +
               std::abs(x(s * f + f - 2, s * f + f - 2).real());
    return worst;
  }
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    double p = 0.0;
    for (int s = 0; s < space.spin_dim(); ++s)
      p += std::norm(x(s * f + f - 1, c)) + std::norm(x(s * f + f - 2, c));
    worst = std::max(worst, p);
  }
  return worst;
}

double end_time(const HamiltonianSchedule& h, const StepPolicy& policy) {
  if (!(h.duration >= 0.0) || !std::isfinite(h.duration)) {
    throw std::invalid_argument("schedule duration must be finite and >= 0");
  }
  if (policy.until >= 0.0) {
    if (policy.until > h.duration * (1.0 + 1e-12)) {
      throw std::invalid_argument("propagation end lies beyond the schedule");
    }
    return std::min(policy.until, h.duration);
  }
  return h.duration;
}

double step_cap(const HamiltonianSchedule& h, const StepPolicy& policy) {
  const double w = h.fastest_frequency();
  double cap = w > 0.0 ? kTwoPi / (20.0 * w) : 0.0;
  if (policy.dt_max > 0.0) cap = cap > 0.0 ? std::min(cap, policy.dt_max) : policy.dt_max;
  return cap;
}

DriveOutcome drive(const HamiltonianSchedule& h, const FrameModel& model, ComplexOperator x0,
                   Layout layout, const StepPolicy& policy, const detail::Rhs& rhs,
                   bool track_tail) {
  if (!(policy.rtol > 0.0) || !(policy.atol > 0.0)) {
    throw std::invalid_argument("step tolerances must be positive");
  }
  const double t_end = end_time(h, policy);
  const HilbertSpace& space = model.space();

  std::vector<double> stops;
  for (double b : h.breakpoints)
    if (b > 0.0 && b < t_end) stops.push_back(b);
  for (double s : policy.sample_times) {
    if (!(s >= 0.0) || s > t_end * (1.0 + 1e-12)) {
      throw std::invalid_argument("sample time outside the propagation window");
    }
    if (s > 0.0) stops.push_back(std::min(s, t_end));
  }
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  std::vector<double> wanted = policy.sample_times;
  std::sort(wanted.begin(), wanted.end());
  std::size_t next_sample = 0;

  DriveOutcome out;
  out.y.x = std::move(x0);
  const Representation repr =
      layout == Layout::Density ? Representation::Density : Representation::Pure;
  auto record = [&](double t) {
    while (next_sample < wanted.size() && std::min(wanted[next_sample], t_end) <= t) {
      SpinMotionState st = repr == Representation::Pure
                               ? SpinMotionState::pure(space, out.y.x.col(0))
                               : SpinMotionState::density(space, out.y.x);
      out.samples.push_back({t, std::move(st), out.y.beta});
      ++next_sample;
    }
  };
  if (track_tail) out.max_tail = top_population(space, out.y.x, layout);
  record(0.0);

  detail::StepperOptions opt{policy.rtol, policy.atol, step_cap(h, policy)};
  auto after = [&](double, const OdeState& y) {
    if (track_tail) out.max_tail = std::max(out.max_tail, top_population(space, y.x, layout));
  };
  double t = 0.0;
  for (double stop : stops) {
    detail::integrate_interval(rhs, out.y, t, stop, opt, out.log, after);
    t = stop;
    record(t);
  }
  return out;
}

detail::Rhs schrodinger_rhs(const FrameModel& model) {
  return [&model](double t, const OdeState& y, OdeState& dy) {
    MotionGroups g(model.space().spin_dim());
    const Complex f = model.hamiltonian(t, y.beta, g);
    dy.x = ComplexOperator::Zero(y.x.rows(), y.x.cols());
    detail::apply_groups(model.space(), g, y.x, dy.x, -kI);
    dy.beta = -kI * f;
  };
}

detail::Rhs lindblad_rhs(const FrameModel& model) {
  return [&model](double t, const OdeState& y, OdeState& dy) {
    const HilbertSpace& space = model.space();
    MotionGroups g(space.spin_dim());
    const Complex f = model.hamiltonian(t, y.beta, g);
    ComplexOperator hx = ComplexOperator::Zero(y.x.rows(), y.x.cols());
    detail::apply_groups(space, g, y.x, hx, 1.0);
    dy.x = -kI * hx;
    dy.x += kI * hx.adjoint();
    if (model.jump_count() > 0) {
      std::vector<MotionGroups> jumps;
      model.jumps(y.beta, jumps);
      ComplexOperator lx(y.x.rows(), y.x.cols());
      ComplexOperator v(y.x.rows(), y.x.cols());
      for (const auto& l : jumps) {
        lx.setZero();
        detail::apply_groups(space, l, y.x, lx, 1.0);
        // L rho L^dag = L (L rho)^dag for Hermitian rho.
        const ComplexOperator lx_dag = lx.adjoint();
        detail::apply_groups(space, l, lx_dag, dy.x, 1.0);
        v.setZero();
        detail::apply_groups(space, l, lx, v, 1.0, true);
        dy.x -= 0.5 * v;
        dy.x -= 0.5 * v.adjoint();
      }
    }
    dy.beta = -kI * f;
  };
}

int suggest_n_max(int n_max) { return std::max(n_max + 10, (3 * n_max + 1) / 2); }

void check_truncation(const HilbertSpace& space, double tail, double tolerance) {
  if (tolerance > 0.0 && tail > tolerance) {
    std::ostringstream msg;
    msg << "truncation health violated: population " << tail
        << " reached the top two Fock levels (n_max = " << space.n_max << "); try n_max = "
        << suggest_n_max(space.n_max);
    throw TruncationError(msg.str(), tail, suggest_n_max(space.n_max));
  }
}

ComplexOperator lift_displacement(const HilbertSpace& space, Complex beta) {
  return kron(ComplexOperator::Identity(space.spin_dim(), space.spin_dim()),
              displacement_operator(beta, space.n_max));
}

PropagationResult finish(const HilbertSpace& space, DriveOutcome&& out, Layout layout,
                         const StepPolicy& policy) {
  PropagationResult r{layout == Layout::Density
                          ? SpinMotionState::density(space, std::move(out.y.x))
                          : SpinMotionState::pure(space, out.y.x.col(0)),
                      out.y.beta,
                      std::move(out.samples),
                      out.log.steps,
                      out.log.rejected,
                      out.log.max_error,
                      0.0,
                      out.max_tail};
  r.norm_error = r.final_state.norm_error();
  check_truncation(space, r.max_truncation_tail, policy.truncation_tolerance);
  if (r.norm_error > policy.norm_tolerance) {
    std::ostringstream msg;
    msg << "norm/trace drifted by " << r.norm_error << " during propagation";
    throw InvariantViolation(msg.str());
  }
  if (layout == Layout::Density) {
    const ComplexOperator& rho = r.final_state.rho();
    Eigen::SelfAdjointEigenSolver<ComplexOperator> es(0.5 * (rho + rho.adjoint()),
                                                      Eigen::EigenvaluesOnly);
    const double lowest = es.eigenvalues().minCoeff();
    if (lowest < policy.positivity_floor) {
      std::ostringstream msg;
      msg << "density matrix lost positivity: eigenvalue " << lowest;
      throw InvariantViolation(msg.str());
    }
  }
  return r;
}

}  // namespace

SpinMotionState PropagationResult::lab_state() const {
  if (displacement == 0.0) return final_state;
  const HilbertSpace& space = final_state.space();
  const ComplexOperator d = lift_displacement(space, displacement);
  if (final_state.is_pure()) return SpinMotionState::pure(space, d * final_state.amplitudes());
  return SpinMotionState::density(space, d * final_state.rho() * d.adjoint());
}

PropagationResult evolve_schrodinger(const HamiltonianSchedule& h, const SpinMotionState& psi0,
                                     const StepPolicy& policy) {
  if (!psi0.is_pure()) throw std::invalid_argument("evolve_schrodinger needs a pure state");
  if (psi0.space().n_qubits != h.n_qubits) {
    throw std::invalid_argument("state and schedule act on different qubit registers");
  }
  const FrameModel model(h, psi0.space().n_max, policy.displaced_frame);
  const auto rhs = schrodinger_rhs(model);
  auto out = drive(h, model, psi0.amplitudes(), Layout::Vectors, policy, rhs, true);
  return finish(model.space(), std::move(out), Layout::Vectors, policy);
}

PropagationResult evolve_lindblad(const HamiltonianSchedule& h, const SpinMotionState& rho0,
                                  const std::vector<NoiseChannel>& channels,
                                  const StepPolicy& policy) {
  if (rho0.space().n_qubits != h.n_qubits) {
    throw std::invalid_argument("state and schedule act on different qubit registers");
  }
  HamiltonianSchedule total = h;
  std::vector<StructuredOperator> jumps;
  for (const auto& ch : channels) {
    total = with_noise(std::move(total), ch);
    for (auto& l : jump_operators(ch, h.n_qubits)) jumps.push_back(std::move(l));
  }
  const FrameModel model(total, rho0.space().n_max, policy.displaced_frame, jumps);
  const auto rhs = lindblad_rhs(model);
  auto out = drive(total, model, rho0.density_matrix(), Layout::Density, policy, rhs, true);
  return finish(model.space(), std::move(out), Layout::Density, policy);
}

ComplexOperator propagate_unitary(const HamiltonianSchedule& h, int n_max, StepPolicy policy) {
  policy.sample_times.clear();
  const FrameModel model(h, n_max, policy.displaced_frame);
  const HilbertSpace& space = model.space();
  const auto rhs = schrodinger_rhs(model);
  auto out = drive(h, model, ComplexOperator::Identity(space.dim(), space.dim()),
                   Layout::Vectors, policy, rhs, false);
  if (out.y.beta == 0.0) return out.y.x;
  return lift_displacement(space, out.y.beta) * out.y.x;
}

ComplexOperator propagate_spin_block(const HamiltonianSchedule& h, int n_max,
                                     const StepPolicy& policy, int fock_index) {
  StepPolicy p = policy;
  p.sample_times.clear();
  const FrameModel model(h, n_max, p.displaced_frame);
  const HilbertSpace& space = model.space();
  const int s_dim = space.spin_dim();
  if (fock_index < 0 || fock_index > n_max) throw std::invalid_argument("Fock index out of range");
  ComplexOperator x0 = ComplexOperator::Zero(space.dim(), s_dim);
  for (int s = 0; s < s_dim; ++s) x0(space.index(s, fock_index), s) = 1.0;
  const auto rhs = schrodinger_rhs(model);
  auto out = drive(h, model, std::move(x0), Layout::Vectors, p, rhs, true);
  check_truncation(space, out.max_tail, p.truncation_tolerance);
  ComplexOperator lab = out.y.x;
  if (out.y.beta != 0.0) lab = lift_displacement(space, out.y.beta) * lab;
  ComplexOperator block(s_dim, s_dim);
  for (int s = 0; s < s_dim; ++s) block.row(s) = lab.row(space.index(s, fock_index));
  return block;
}

ComplexOperator fock_block(const ComplexOperator& op, const HilbertSpace& space, int n_keep) {
  if (n_keep < 0 || n_keep > space.n_max) throw std::invalid_argument("n_keep out of range");
  if (op.rows() != space.dim() || op.cols() != space.dim()) {
    throw std::invalid_argument("fock_block: dimension mismatch");
  }
  const int k = n_keep + 1;
  const int s_dim = space.spin_dim();
  ComplexOperator out(s_dim * k, s_dim * k);
  for (int a = 0; a < s_dim; ++a)
    for (int b = 0; b < s_dim; ++b)
      out.block(a * k, b * k, k, k) = op.block(space.index(a, 0), space.index(b, 0), k, k);
  return out;
}

}  // namespace iongate
