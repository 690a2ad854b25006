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

#include "iongate/qops.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <string>

#include "iongate/errors.hpp"

namespace iongate {

void HilbertSpace::validate() const {
  if (n_max < 2) {
    throw std::invalid_argument("n_max must be >= 2, got " + std::to_string(n_max));
  }
  if (n_qubits < 1 || n_qubits > 8) {
    throw std::invalid_argument("n_qubits must be in [1, 8], got " + std::to_string(n_qubits));
  }
}

ComplexOperator pauli_x() {
  ComplexOperator m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexOperator pauli_y() {
  ComplexOperator m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexOperator pauli_z() {
  ComplexOperator m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexOperator sigma_plus() {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexOperator sigma_minus() {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexOperator identity2() { return ComplexOperator::Identity(2, 2); }

ComplexOperator pauli_along(const Axis& axis) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(norm > 0.0)) throw std::invalid_argument("rotation axis must be nonzero");
  return (axis[0] * pauli_x() + axis[1] * pauli_y() + axis[2] * pauli_z()) / norm;
}

ComplexOperator spin_rotation(const Axis& axis, double angle) {
  return std::cos(angle / 2.0) * identity2() - kI * std::sin(angle / 2.0) * pauli_along(axis);
}

StateVector spin_up() {
  StateVector v = StateVector::Zero(2);
  v(0) = 1.0;
  return v;
}

StateVector spin_down() {
  StateVector v = StateVector::Zero(2);
  v(1) = 1.0;
  return v;
}

ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b) {
  ComplexOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexOperator on_qubit(int n_qubits, int qubit, const ComplexOperator& op) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument("qubit index out of range");
  }
  ComplexOperator out = ComplexOperator::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    out = kron(out, q == qubit ? op : identity2());
  }
  return out;
}

Motion adjoint(Motion m) {
  switch (m) {
    case Motion::Lower:
      return Motion::Raise;
    case Motion::Raise:
      return Motion::Lower;
    default:
      return m;
  }
}

ComplexOperator motion_matrix(Motion m, int n_max) {
  const int f = n_max + 1;
  ComplexOperator out = ComplexOperator::Zero(f, f);
  for (int n = 0; n < f; ++n) {
    switch (m) {
      case Motion::Identity:
        out(n, n) = 1.0;
        break;
      case Motion::Number:
        out(n, n) = static_cast<double>(n);
        break;
      case Motion::Lower:
        if (n + 1 < f) out(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
        break;
      case Motion::Raise:
        if (n + 1 < f) out(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
        break;
    }
  }
  return out;
}

ComplexOperator embed(const HilbertSpace& space, const ComplexOperator& spin, Motion m) {
  if (spin.rows() != space.spin_dim() || spin.cols() != space.spin_dim()) {
    throw std::invalid_argument("spin operator does not match the qubit register");
  }
  return kron(spin, motion_matrix(m, space.n_max));
}

ComplexOperator to_dense(const HilbertSpace& space, const StructuredOperator& op) {
  ComplexOperator out = ComplexOperator::Zero(space.dim(), space.dim());
  for (const auto& term : op) out += term.coefficient * embed(space, term.spin, term.motion);
  return out;
}

OperatorSet build_operators(int n_max, int n_qubits) {
  HilbertSpace space{n_qubits, n_max};
  space.validate();
  const ComplexOperator spin_id = ComplexOperator::Identity(space.spin_dim(), space.spin_dim());
  OperatorSet ops{space,
                  embed(space, spin_id, Motion::Lower),
                  embed(space, spin_id, Motion::Raise),
                  embed(space, spin_id, Motion::Number),
                  ComplexOperator::Identity(space.dim(), space.dim()),
                  {},
                  {},
                  {}};
  for (int q = 0; q < n_qubits; ++q) {
    ops.sx.push_back(embed(space, on_qubit(n_qubits, q, pauli_x()), Motion::Identity));
    ops.sy.push_back(embed(space, on_qubit(n_qubits, q, pauli_y()), Motion::Identity));
    ops.sz.push_back(embed(space, on_qubit(n_qubits, q, pauli_z()), Motion::Identity));
  }
  return ops;
}

ComplexOperator matrix_exponential(const ComplexOperator& a, Complex scale) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential needs a square matrix");
  if (a.rows() > 4096) throw std::invalid_argument("matrix_exponential limited to dim <= 4096");
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag()) || !a.allFinite()) {
    throw std::invalid_argument("matrix_exponential: non-finite input");
  }
  if (a.size() == 0) return a;
  const ComplexOperator scaled = scale * a;
  ComplexOperator out = scaled.exp();
  if (!out.allFinite()) throw std::invalid_argument("matrix_exponential: result overflowed");
  return out;
}

ComplexOperator displacement_operator(Complex alpha, int n_max) {
  const int f = n_max + 1;
  ComplexOperator d = ComplexOperator::Zero(f, f);
  // Column 0 is the coherent state; D|n> = (a^dag - alpha^*) D|n-1> / sqrt(n).
  // a^dag only moves amplitude upwards, so truncating from above leaves the
  // retained components exact.
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < f; ++k) {
    if (k > 0) c *= alpha / std::sqrt(static_cast<double>(k));
    d(k, 0) = c;
  }
  for (int n = 1; n < f; ++n) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < f; ++k) {
      Complex v = -std::conj(alpha) * d(k, n - 1);
      if (k > 0) v += std::sqrt(static_cast<double>(k)) * d(k - 1, n - 1);
      d(k, n) = v * inv;
    }
  }
  return d;
}

double hermiticity_error(const ComplexOperator& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexOperator& u) {
  return (u.adjoint() * u - ComplexOperator::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const ComplexOperator& u, const ComplexOperator& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("phase_aligned_distance: dimension mismatch");
  }
  const Complex overlap = (u.adjoint() * v).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : 1.0;
  return (u - phase * v).norm();
}

double von_neumann_entropy(const ComplexOperator& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(rho);
  double s = 0.0;
  for (double p : es.eigenvalues()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double negativity(const ComplexOperator& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("negativity expects a two-qubit density matrix");
  }
  ComplexOperator pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(pt);
  double neg = 0.0;
  for (double p : es.eigenvalues()) {
    if (p < 0.0) neg -= p;
  }
  return neg;
}

namespace {

ComplexOperator hermitian_sqrt(const ComplexOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double state_fidelity(const ComplexOperator& rho, const ComplexOperator& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  }
  const ComplexOperator s = hermitian_sqrt(rho);
  ComplexOperator inner = s * sigma * s;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(inner);
  double tr = 0.0;
  for (double p : es.eigenvalues()) tr += std::sqrt(std::max(p, 0.0));
  return tr * tr;
}

SpinMotionState SpinMotionState::pure(const HilbertSpace& space, StateVector amplitudes) {
  space.validate();
  if (amplitudes.size() != space.dim()) {
    throw std::invalid_argument("state vector dimension does not match the Hilbert space");
  }
  SpinMotionState s(space, Representation::Pure);
  s.psi_ = std::move(amplitudes);
  return s;
}

SpinMotionState SpinMotionState::density(const HilbertSpace& space, ComplexOperator rho) {
  space.validate();
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw std::invalid_argument("density matrix dimension does not match the Hilbert space");
  }
  SpinMotionState s(space, Representation::Density);
  s.rho_ = std::move(rho);
  return s;
}

SpinMotionState SpinMotionState::product(const HilbertSpace& space, const StateVector& spin,
                                         int n) {
  space.validate();
  if (spin.size() != space.spin_dim()) {
    throw std::invalid_argument("spin state dimension does not match the qubit register");
  }
  if (n < 0 || n > space.n_max) throw std::invalid_argument("Fock index outside the truncation");
  StateVector psi = StateVector::Zero(space.dim());
  for (int s = 0; s < space.spin_dim(); ++s) psi(space.index(s, n)) = spin(s);
  return pure(space, std::move(psi));
}

const StateVector& SpinMotionState::amplitudes() const {
  if (!is_pure()) throw std::logic_error("amplitudes() called on a density-matrix state");
  return psi_;
}

const ComplexOperator& SpinMotionState::rho() const {
  if (is_pure()) throw std::logic_error("rho() called on a pure state");
  return rho_;
}

ComplexOperator SpinMotionState::density_matrix() const {
  return is_pure() ? ComplexOperator(psi_ * psi_.adjoint()) : rho_;
}

SpinMotionState SpinMotionState::as_density() const {
  return is_pure() ? density(space_, density_matrix()) : *this;
}

ComplexOperator SpinMotionState::reduced_spin() const {
  const int f = space_.fock_dim();
  const int sd = space_.spin_dim();
  if (is_pure()) {
    Eigen::Map<const ComplexOperator> m(psi_.data(), f, sd);
    return m.transpose() * m.conjugate();
  }
  ComplexOperator out(sd, sd);
  for (int a = 0; a < sd; ++a)
    for (int b = 0; b < sd; ++b) out(a, b) = rho_.block(a * f, b * f, f, f).trace();
  return out;
}

ComplexOperator SpinMotionState::reduced_motion() const {
  const int f = space_.fock_dim();
  const int sd = space_.spin_dim();
  ComplexOperator out = ComplexOperator::Zero(f, f);
  if (is_pure()) {
    Eigen::Map<const ComplexOperator> m(psi_.data(), f, sd);
    return m * m.adjoint();
  }
  for (int s = 0; s < sd; ++s) out += rho_.block(s * f, s * f, f, f);
  return out;
}

double SpinMotionState::fock_population(int n) const {
  double p = 0.0;
  for (int s = 0; s < space_.spin_dim(); ++s) {
    const int i = space_.index(s, n);
    p += is_pure() ? std::norm(psi_(i)) : rho_(i, i).real();
  }
  return p;
}

double SpinMotionState::truncation_tail() const {
  return fock_population(space_.n_max) + fock_population(space_.n_max - 1);
}

double SpinMotionState::norm_error() const {
  return is_pure() ? std::abs(psi_.squaredNorm() - 1.0) : std::abs(rho_.trace() - 1.0);
}

void SpinMotionState::check(double norm_tol, double eigen_floor) const {
  if (norm_error() > norm_tol) {
    throw InvariantViolation("state normalization off by " + std::to_string(norm_error()));
  }
  if (is_pure()) return;
  const double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
  if (hermiticity_error(rho_) > 1e-10 * scale) {
    throw InvariantViolation("density matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(rho_, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < eigen_floor) {
    throw InvariantViolation("density matrix has eigenvalue " + std::to_string(lowest));
  }
}

Complex expectation(const SpinMotionState& state, const ComplexOperator& a) {
  const int d = state.space().dim();
  if (a.rows() != d || a.cols() != d) {
    throw std::invalid_argument("expectation: operator dimension does not match the state");
  }
  if (state.is_pure()) return state.amplitudes().dot(a * state.amplitudes());
  return (state.rho() * a).trace();
}

double variance(const SpinMotionState& state, const ComplexOperator& a) {
  const Complex m = expectation(state, a);
  return (expectation(state, a * a) - m * m).real();
}

}  // namespace iongate
