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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace iongate {

using Complex = std::complex<double>;
using ComplexOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Axis = std::array<double, 3>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Layout of a qubit register coupled to a single motional mode.
///
/// Qubits form the slow axis and the Fock index the fast axis:
/// `index = spin * (n_max + 1) + n`. Within the spin index, qubit 0 is the most
/// significant bit, and each qubit uses the basis (|up>, |down>) so that
/// sigma_z = diag(+1, -1).
struct HilbertSpace {
  int n_qubits = 1;
  int n_max = 20;

  int spin_dim() const { return 1 << n_qubits; }
  int fock_dim() const { return n_max + 1; }
  int dim() const { return spin_dim() * fock_dim(); }

  int index(int spin, int n) const { return spin * fock_dim() + n; }
  std::pair<int, int> split(int index) const { return {index / fock_dim(), index % fock_dim()}; }

  // Throws std::invalid_argument for n_max < 2 or n_qubits outside [1, 8].
  void validate() const;

  bool operator==(const HilbertSpace&) const = default;
};

// Single-qubit matrices in the (|up>, |down>) basis.
ComplexOperator pauli_x();
ComplexOperator pauli_y();
ComplexOperator pauli_z();
ComplexOperator sigma_plus();   // |up><down|
ComplexOperator sigma_minus();  // |down><up|
ComplexOperator identity2();

// n.sigma for a (not necessarily normalized) axis; the axis is normalized first.
ComplexOperator pauli_along(const Axis& axis);

// exp(-i angle/2 n.sigma)
ComplexOperator spin_rotation(const Axis& axis, double angle);

StateVector spin_up();
StateVector spin_down();

ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b);

// Lifts a single-qubit operator onto qubit `qubit` of an n-qubit register.
ComplexOperator on_qubit(int n_qubits, int qubit, const ComplexOperator& op);

/// Motional monomials. Hamiltonians in this library are sums of
/// spin-operator times one of these, which is what lets the propagators work in
/// a displaced frame.
enum class Motion { Identity, Lower, Raise, Number };

Motion adjoint(Motion m);
ComplexOperator motion_matrix(Motion m, int n_max);

// spin (2^N square) tensored with a motional monomial on the full space.
ComplexOperator embed(const HilbertSpace& space, const ComplexOperator& spin, Motion m);

/// One `coefficient * spin (x) motion` summand with a constant coefficient.
struct SpinMotionTerm {
  ComplexOperator spin;
  Motion motion = Motion::Identity;
  Complex coefficient{1.0, 0.0};
};

// A constant operator written as a sum of SpinMotionTerm, e.g. jump operators.
using StructuredOperator = std::vector<SpinMotionTerm>;

ComplexOperator to_dense(const HilbertSpace& space, const StructuredOperator& op);

/// Full-space operator set for a register of `n_qubits` qubits and one mode.
struct OperatorSet {
  HilbertSpace space;
  ComplexOperator a;
  ComplexOperator adag;
  ComplexOperator number;
  ComplexOperator identity;
  std::vector<ComplexOperator> sx;
  std::vector<ComplexOperator> sy;
  std::vector<ComplexOperator> sz;
};

// Throws std::invalid_argument when n_max < 2.
OperatorSet build_operators(int n_max, int n_qubits = 1);

// exp(scale * a). Throws std::invalid_argument for non-finite input or dim > 4096.
ComplexOperator matrix_exponential(const ComplexOperator& a, Complex scale = 1.0);

// Matrix elements <m|D(alpha)|n> of the untruncated displacement operator for
// 0 <= m, n <= n_max. Not unitary on the truncated space unless |alpha| is small
// compared to sqrt(n_max).
ComplexOperator displacement_operator(Complex alpha, int n_max);

double hermiticity_error(const ComplexOperator& a);  // max |A - A^dag|
double unitarity_error(const ComplexOperator& u);    // max |U^dag U - I|

// Frobenius distance after multiplying v by the phase that maximizes
// Re Tr(u^dag e^{i phi} v).
double phase_aligned_distance(const ComplexOperator& u, const ComplexOperator& v);

// Entropy in nats of a density matrix; eigenvalues below 0 are clamped.
double von_neumann_entropy(const ComplexOperator& rho);

// Sum of |negative eigenvalues| of the partial transpose on the second qubit of
// a two-qubit density matrix.
double negativity(const ComplexOperator& rho_two_qubit);

// Uhlmann fidelity between two density matrices of equal dimension.
double state_fidelity(const ComplexOperator& rho, const ComplexOperator& sigma);

enum class Representation { Pure, Density };

/// A pure state or density matrix on the space `HilbertSpace` describes.
class SpinMotionState {
 public:
  static SpinMotionState pure(const HilbertSpace& space, StateVector amplitudes);
  static SpinMotionState density(const HilbertSpace& space, ComplexOperator rho);
  // |spin> (x) |n>, with `spin` a 2^N amplitude vector.
  static SpinMotionState product(const HilbertSpace& space, const StateVector& spin, int n);

  const HilbertSpace& space() const { return space_; }
  Representation representation() const { return repr_; }
  bool is_pure() const { return repr_ == Representation::Pure; }

  const StateVector& amplitudes() const;
  const ComplexOperator& rho() const;
  ComplexOperator density_matrix() const;
  SpinMotionState as_density() const;

  ComplexOperator reduced_spin() const;
  ComplexOperator reduced_motion() const;
  double fock_population(int n) const;
  // Total population in the two highest retained Fock levels.
  double truncation_tail() const;
  // |<psi|psi> - 1| or |Tr rho - 1|.
  double norm_error() const;

  // Throws InvariantViolation when the norm/trace, hermiticity or positivity
  // invariants are broken.
  void check(double norm_tol = 1e-10, double eigen_floor = -1e-9) const;

 private:
  SpinMotionState(HilbertSpace space, Representation repr) : space_(space), repr_(repr) {}

  HilbertSpace space_;
  Representation repr_;
  StateVector psi_;
  ComplexOperator rho_;
};

// <psi|A|psi> or Tr(rho A). Throws std::invalid_argument on dimension mismatch.
Complex expectation(const SpinMotionState& state, const ComplexOperator& a);
double variance(const SpinMotionState& state, const ComplexOperator& a);

}  // namespace iongate
