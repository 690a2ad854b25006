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

#include "integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iongate/errors.hpp"

namespace iongate::detail {

MotionGroups::MotionGroups(int spin_dim) {
  for (auto& s : spin) s = ComplexOperator::Zero(spin_dim, spin_dim);
}

void MotionGroups::add(Motion m, const ComplexOperator& s, Complex c) {
  const int i = static_cast<int>(m);
  spin[i] += c * s;
  active[i] = true;
}

void MotionGroups::reset() {
  for (auto& s : spin) s.setZero();
  active.fill(false);
}

namespace {

// tmp = (I_spin (x) m) x, or m^dag when adjoint is set.
void apply_motion(Motion m, int f, int s_dim, const ComplexOperator& x, ComplexOperator& tmp) {
  tmp.resize(x.rows(), x.cols());
  Eigen::VectorXd w(f);
  for (int n = 0; n < f; ++n) w(n) = m == Motion::Number ? n : std::sqrt(n + 1.0);
  for (int s = 0; s < s_dim; ++s) {
    const int r0 = s * f;
    switch (m) {
      case Motion::Lower:
        tmp.middleRows(r0, f - 1) = w.head(f - 1).asDiagonal() * x.middleRows(r0 + 1, f - 1);
        tmp.row(r0 + f - 1).setZero();
        break;
      case Motion::Raise:
        tmp.middleRows(r0 + 1, f - 1) = w.head(f - 1).asDiagonal() * x.middleRows(r0, f - 1);
        tmp.row(r0).setZero();
        break;
      case Motion::Number:
        tmp.middleRows(r0, f) = w.asDiagonal() * x.middleRows(r0, f);
        break;
      case Motion::Identity:
        tmp.middleRows(r0, f) = x.middleRows(r0, f);
        break;
    }
  }
}

}  // namespace

void apply_groups(const HilbertSpace& space, const MotionGroups& g, const ComplexOperator& x,
                  ComplexOperator& out, Complex scale, bool adjoint) {
  const int f = space.fock_dim();
  const int s_dim = space.spin_dim();
  ComplexOperator tmp;
  for (int i = 0; i < 4; ++i) {
    if (!g.active[i]) continue;
    const Motion m = adjoint ? iongate::adjoint(static_cast<Motion>(i)) : static_cast<Motion>(i);
    const ComplexOperator& spin = g.spin[i];
    const ComplexOperator* src = &x;
    if (m != Motion::Identity) {
      apply_motion(m, f, s_dim, x, tmp);
      src = &tmp;
    }
    for (int s = 0; s < s_dim; ++s) {
      for (int sp = 0; sp < s_dim; ++sp) {
        const Complex c = adjoint ? std::conj(spin(sp, s)) : spin(s, sp);
        if (c == 0.0) continue;
        out.middleRows(s * f, f) += (scale * c) * src->middleRows(sp * f, f);
      }
    }
  }
}

FrameModel::FrameModel(const HamiltonianSchedule& h, int n_max, bool displaced,
                       const std::vector<StructuredOperator>& jumps)
    : h_(&h), space_{h.n_qubits, n_max}, displaced_(displaced) {
  space_.validate();
  for (const auto& term : h.terms) {
    if (term.spin.rows() != space_.spin_dim() || term.spin.cols() != space_.spin_dim()) {
      throw std::invalid_argument("schedule term does not match the qubit register");
    }
  }
  for (const auto& op : jumps) {
    MotionGroups g(space_.spin_dim());
    for (const auto& term : op) {
      if (term.spin.rows() != space_.spin_dim()) {
        throw std::invalid_argument("jump operator does not match the qubit register");
      }
      g.add(term.motion, term.spin, term.coefficient);
    }
    jumps_.push_back(std::move(g));
  }
}

void FrameModel::substitute(MotionGroups& g, Complex beta) {
  // a -> a + beta, a^dag -> a^dag + beta^*, a^dag a -> a^dag a + beta a^dag + beta^* a + |beta|^2
  if (beta == 0.0) return;
  const bool lower = g.active[1], raise = g.active[2], number = g.active[3];
  if (!lower && !raise && !number) return;
  ComplexOperator& id = g[Motion::Identity];
  if (lower) id += beta * g[Motion::Lower];
  if (raise) id += std::conj(beta) * g[Motion::Raise];
  if (number) {
    id += std::norm(beta) * g[Motion::Number];
    g[Motion::Raise] += beta * g[Motion::Number];
    g[Motion::Lower] += std::conj(beta) * g[Motion::Number];
    g.active[1] = g.active[2] = true;
  }
  g.active[0] = true;
}

Complex FrameModel::hamiltonian(double t, Complex beta, MotionGroups& out) const {
  out.reset();
  for (const auto& term : h_->terms) {
    const Complex c = term.coefficient(t);
    if (c == 0.0) continue;
    out.add(term.motion, term.spin, c);
    if (term.add_conjugate) out.add(iongate::adjoint(term.motion), term.spin.adjoint(), std::conj(c));
  }
  if (!displaced_) return 0.0;
  Complex f = 0.0;
  if (out.active[2]) {
    f = out[Motion::Raise].trace() / static_cast<double>(space_.spin_dim());
    out[Motion::Raise].diagonal().array() -= f;
    out[Motion::Lower].diagonal().array() -= std::conj(f);
  }
  substitute(out, beta);
  return f;
}

void FrameModel::jumps(Complex beta, std::vector<MotionGroups>& out) const {
  out = jumps_;
  if (!displaced_) return;
  for (auto& g : out) substitute(g, beta);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// Fifth- minus fourth-order weights.
constexpr double kE[7] = {71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

double max_abs(const ComplexOperator& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

void integrate_interval(const Rhs& rhs, OdeState& y, double ta, double tb,
                        const StepperOptions& opt, StepperLog& log,
                        const std::function<void(double, const OdeState&)>& after_step) {
  if (!(tb > ta)) return;
  const double lo = std::nextafter(ta, tb);
  const double hi = std::nextafter(tb, ta);
  auto eval = [&](double t, const OdeState& s, OdeState& k) {
    rhs(std::clamp(t, lo, hi), s, k);
  };

  std::array<OdeState, 7> k;
  OdeState stage, y_new;
  double t = ta;
  eval(t, y, k[0]);

  double h = log.h_last;
  if (!(h > 0.0)) {
    const double d0 = std::max(max_abs(y.x), std::abs(y.beta));
    const double d1 = std::max(max_abs(k[0].x), std::abs(k[0].beta));
    h = d1 > 0.0 ? 1e-3 * std::max(d0, 1e-6) / d1 : tb - ta;
  }
  if (opt.h_max > 0.0) h = std::min(h, opt.h_max);

  while (t < tb) {
    double step = h;
    bool last = false;
    if (t + step >= tb || tb - (t + step) < 1e-9 * step) {
      step = tb - t;
      last = true;
    }
    for (int i = 1; i < 7; ++i) {
      stage.x = y.x;
      stage.beta = y.beta;
      for (int j = 0; j < i; ++j) {
        if (kA[i][j] == 0.0) continue;
        stage.x += (step * kA[i][j]) * k[j].x;
        stage.beta += (step * kA[i][j]) * k[j].beta;
      }
      eval(t + kC[i] * step, stage, k[i]);
      if (i == 6) y_new = stage;
    }
    // Stage 7 is evaluated at the fifth-order solution (FSAL).
    ComplexOperator ex = ComplexOperator::Zero(y.x.rows(), y.x.cols());
    Complex eb = 0.0;
    for (int j = 0; j < 7; ++j) {
      if (kE[j] == 0.0) continue;
      ex += (step * kE[j]) * k[j].x;
      eb += (step * kE[j]) * k[j].beta;
    }
    const double ex_abs = max_abs(ex);
    const double scale_x = opt.atol + opt.rtol * std::max(max_abs(y.x), max_abs(y_new.x));
    const double scale_b =
        opt.atol + opt.rtol * std::max({std::abs(y.beta), std::abs(y_new.beta), 1.0});
    const double err = std::max(ex_abs / scale_x, std::abs(eb) / scale_b);
    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;

    if (err <= 1.0) {
      t = last ? tb : t + step;
      std::swap(y, y_new);
      std::swap(k[0], k[6]);
      ++log.steps;
      log.max_error = std::max({log.max_error, ex_abs, std::abs(eb)});
      if (after_step) after_step(t, y);
      // A truncated final step says nothing about the natural step size.
      if (!last || step >= h) h = step * factor;
      if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
      log.h_last = h;
    } else {
      ++log.rejected;
      h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < 1e-13 * std::max(std::abs(t), tb - ta)) {
        std::ostringstream msg;
        msg << "step size underflow at t = " << t << " s (h = " << h << " s)";
        throw InvariantViolation(msg.str());
      }
    }
  }
}

}  // namespace iongate::detail
