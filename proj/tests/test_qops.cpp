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


#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "iongate/errors.hpp"
#include "iongate/qops.hpp"
#include "oracles.hpp"

using namespace iongate;

TEST_SUITE("qops") {
  TEST_CASE("ladder operators act on Fock states") {
    const auto ops = build_operators(12);
    const auto vac = SpinMotionState::product(ops.space, spin_up(), 0);
    const StateVector raised = ops.adag * vac.amplitudes();
    CHECK(std::abs(raised(ops.space.index(0, 1)) - Complex(1.0)) < 1e-15);
    CHECK(raised.norm() == doctest::Approx(1.0).epsilon(1e-15));

    const auto ten = SpinMotionState::product(ops.space, spin_down(), 10);
    CHECK(expectation(ten, ops.number).real() == doctest::Approx(10.0).epsilon(1e-15));
  }

  TEST_CASE("canonical commutator holds away from the truncation edge") {
    const int n_max = 15;
    const ComplexOperator a = motion_matrix(Motion::Lower, n_max);
    const ComplexOperator ad = motion_matrix(Motion::Raise, n_max);
    const ComplexOperator comm = a * ad - ad * a;
    const int keep = n_max - 1;  // levels n < n_max - 1
    const ComplexOperator block = comm.topLeftCorner(keep, keep);
    CHECK((block - ComplexOperator::Identity(keep, keep)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((motion_matrix(Motion::Lower, n_max) - oracle::lowering(n_max)).norm() < 1e-15);
  }

  TEST_CASE("build_operators rejects tiny truncations") {
    CHECK_THROWS_AS(build_operators(1), std::invalid_argument);
    CHECK_NOTHROW(build_operators(2));
  }

  TEST_CASE("matrix exponential identities") {
    const ComplexOperator zero = ComplexOperator::Zero(6, 6);
    CHECK((matrix_exponential(zero) - ComplexOperator::Identity(6, 6)).cwiseAbs().maxCoeff() ==
          0.0);
    const ComplexOperator u = matrix_exponential(pauli_x(), Complex(0.0, -kPi / 2));
    const ComplexOperator expected = Complex(0.0, -1.0) * oracle::sigma('x');
    CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-12);

    ComplexOperator bad = zero;
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(matrix_exponential(bad), std::invalid_argument);
  }

  TEST_CASE("displacement of the vacuum is the summed coherent state") {
    const int n_max = 40;
    const Complex alpha(0.3, 0.0);
    const ComplexOperator a = oracle::lowering(n_max);
    const ComplexOperator gen = alpha * a.adjoint() - std::conj(alpha) * a;
    const StateVector psi = matrix_exponential(gen).col(0);
    const StateVector ref = oracle::coherent_amplitudes(alpha, n_max);
    CHECK((psi - ref).cwiseAbs().maxCoeff() < 1e-13);

    const auto state = SpinMotionState::product({1, n_max}, spin_up(), 0);
    const ComplexOperator d = kron(identity2(), matrix_exponential(gen));
    const auto displaced = SpinMotionState::pure(state.space(), d * state.amplitudes());
    const auto ops = build_operators(n_max);
    CHECK(std::abs(expectation(displaced, ops.number).real() - 0.09) < 1e-9);

    SUBCASE("closed-form matrix elements agree with the exponential") {
      const Complex beta(0.7, -0.4);
      const ComplexOperator g = beta * a.adjoint() - std::conj(beta) * a;
      const ComplexOperator ref_big = matrix_exponential(g);
      const ComplexOperator exact = displacement_operator(beta, n_max);
      CHECK((exact.topLeftCorner(15, 15) - ref_big.topLeftCorner(15, 15)).cwiseAbs().maxCoeff() <
            1e-12);
      const StateVector col = displacement_operator(beta, n_max).col(0);
      CHECK((col - oracle::coherent_amplitudes(beta, n_max)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  TEST_CASE("spin rotations compose and match the Pauli exponential") {
    const Axis axis{0.3, -0.5, 0.8};
    const ComplexOperator r1 = spin_rotation(axis, 0.4);
    const ComplexOperator r2 = spin_rotation(axis, 1.1);
    CHECK((r1 * r2 - spin_rotation(axis, 1.5)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(unitarity_error(r1) < 1e-15);
    const ComplexOperator ref = matrix_exponential(pauli_along(axis), Complex(0.0, -0.2));
    CHECK((r1 - ref).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((spin_rotation({0, 1, 0}, kPi) - Complex(0, -1) * oracle::sigma('y')).norm() < 1e-15);
  }

  TEST_CASE("register layout puts qubit 0 first") {
    const ComplexOperator z0 = on_qubit(2, 0, pauli_z());
    const ComplexOperator z1 = on_qubit(2, 1, pauli_z());
    CHECK((z0 - oracle::tensor(oracle::sigma('z'), oracle::sigma('i'))).norm() == 0.0);
    CHECK((z1 - oracle::tensor(oracle::sigma('i'), oracle::sigma('z'))).norm() == 0.0);
    CHECK((kron(pauli_x(), pauli_y()) - oracle::tensor(oracle::sigma('x'), oracle::sigma('y')))
              .norm() == 0.0);

    const HilbertSpace space{1, 4};
    const ComplexOperator e = embed(space, pauli_z(), Motion::Raise);
    CHECK((e - oracle::tensor(oracle::sigma('z'), oracle::lowering(4).adjoint())).norm() == 0.0);
    CHECK(space.index(1, 3) == 8);
    CHECK(space.split(8) == std::pair{1, 3});
  }

  TEST_CASE("structured operators densify term by term") {
    const HilbertSpace space{1, 5};
    StructuredOperator op{{pauli_x(), Motion::Lower, {0.5, 0.0}},
                          {identity2(), Motion::Number, {0.0, 2.0}}};
    const ComplexOperator a = oracle::lowering(5);
    const ComplexOperator ref = 0.5 * oracle::tensor(oracle::sigma('x'), a) +
                                Complex(0, 2) * oracle::tensor(oracle::sigma('i'), a.adjoint() * a);
    CHECK((to_dense(space, op) - ref).norm() < 1e-14);
  }

  TEST_CASE("expectation values and variances") {
    const HilbertSpace space{1, 3};
    const auto ops = build_operators(3);
    const auto down = SpinMotionState::product(space, spin_down(), 0);
    CHECK(expectation(down, ops.sz[0]).real() == doctest::Approx(-1.0));
    CHECK(variance(down, ops.sy[0]) == doctest::Approx(1.0));

    ComplexOperator rho = ComplexOperator::Zero(space.dim(), space.dim());
    rho(space.index(0, 0), space.index(0, 0)) = 0.5;
    rho(space.index(0, 1), space.index(0, 1)) = 0.5;
    const auto mixed = SpinMotionState::density(space, rho);
    CHECK(expectation(mixed, ops.number).real() == doctest::Approx(0.5));
    CHECK(mixed.fock_population(1) == doctest::Approx(0.5));

    CHECK_THROWS_AS(expectation(mixed, ComplexOperator::Identity(3, 3)), std::invalid_argument);
  }

  TEST_CASE("entropy, negativity and fidelity of reference states") {
    CHECK(von_neumann_entropy(0.5 * ComplexOperator::Identity(2, 2)) ==
          doctest::Approx(std::log(2.0)));
    StateVector bell = StateVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    CHECK(negativity(bell * bell.adjoint()) == doctest::Approx(0.5));
    const StateVector prod = kron(spin_up(), spin_down());
    CHECK(negativity(prod * prod.adjoint()) < 1e-15);

    const ComplexOperator p = spin_up() * spin_up().adjoint();
    const ComplexOperator m = 0.5 * ComplexOperator::Identity(2, 2);
    CHECK(state_fidelity(p, m) == doctest::Approx(0.5));
    CHECK(state_fidelity(p, p) == doctest::Approx(1.0));
  }

  TEST_CASE("phase-aligned distance ignores global phase only") {
    const ComplexOperator u = spin_rotation({1, 0, 0}, 0.7);
    CHECK(phase_aligned_distance(u, std::exp(Complex(0, 2.1)) * u) < 1e-14);
    CHECK(phase_aligned_distance(u, spin_rotation({1, 0, 0}, 0.8)) > 1e-2);
  }

  TEST_CASE("reduced states of a product state") {
    const HilbertSpace space{1, 6};
    StateVector spin(2);
    spin << 0.6, Complex(0.0, 0.8);
    const auto s = SpinMotionState::product(space, spin, 3);
    const ComplexOperator ref = spin * spin.adjoint();
    CHECK((s.reduced_spin() - ref).norm() < 1e-15);
    CHECK(s.reduced_motion()(3, 3).real() == doctest::Approx(1.0));
    CHECK((s.as_density().reduced_spin() - ref).norm() < 1e-15);
    CHECK(von_neumann_entropy(s.reduced_spin()) < 1e-12);
    CHECK(s.truncation_tail() == 0.0);
    CHECK(SpinMotionState::product(space, spin, 5).truncation_tail() == doctest::Approx(1.0));
  }

  TEST_CASE("state invariant checks") {
    const HilbertSpace space{1, 3};
    StateVector v = StateVector::Zero(space.dim());
    v(0) = 1.1;
    CHECK_THROWS_AS(SpinMotionState::pure(space, v).check(), InvariantViolation);
    ComplexOperator rho = ComplexOperator::Zero(space.dim(), space.dim());
    rho(0, 0) = 1.2;
    rho(1, 1) = -0.2;
    CHECK_THROWS_AS(SpinMotionState::density(space, rho).check(), InvariantViolation);
    CHECK_NOTHROW(SpinMotionState::product(space, spin_up(), 1).check());
  }
}
