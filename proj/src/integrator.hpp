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

// Internal machinery shared by the propagators: structured application of
// spin (x) motion operators, the displaced-frame bookkeeping and the
// Dormand-Prince 5(4) stepper.

#include <array>
#include <functional>
#include <vector>

#include "iongate/gatemodel.hpp"
#include "iongate/qops.hpp"

namespace iongate::detail {

/// An operator sum_m spin[m] (x) m over the four motional monomials.
struct MotionGroups {
  std::array<ComplexOperator, 4> spin;
  std::array<bool, 4> active{false, false, false, false};

  explicit MotionGroups(int spin_dim = 2);
  ComplexOperator& operator[](Motion m) { return spin[static_cast<int>(m)]; }
  const ComplexOperator& operator[](Motion m) const { return spin[static_cast<int>(m)]; }
  void add(Motion m, const ComplexOperator& s, Complex c);
  void reset();
};

// out += scale * G x (or G^dag x), x being a dim x cols block of column vectors.
void apply_groups(const HilbertSpace& space, const MotionGroups& g, const ComplexOperator& x,
                  ComplexOperator& out, Complex scale, bool adjoint = false);

/// A schedule (plus constant jump operators) seen from the frame displaced by
/// beta(t), where beta' = -i f(t) and f is the identity-spin part of the a^dag
/// coefficient. Without displacement, f is reported as 0 and nothing is removed.
class FrameModel {
 public:
  FrameModel(const HamiltonianSchedule& h, int n_max, bool displaced,
             const std::vector<StructuredOperator>& jumps = {});

  const HilbertSpace& space() const { return space_; }
  bool displaced() const { return displaced_; }

  // Frame Hamiltonian at (t, beta); returns f(t).
  Complex hamiltonian(double t, Complex beta, MotionGroups& out) const;
  // Frame jump operators for the given beta.
  void jumps(Complex beta, std::vector<MotionGroups>& out) const;
  std::size_t jump_count() const { return jumps_.size(); }

 private:
  static void substitute(MotionGroups& g, Complex beta);

  const HamiltonianSchedule* h_;
  HilbertSpace space_;
  bool displaced_;
  std::vector<MotionGroups> jumps_;
};

struct OdeState {
  ComplexOperator x;
  Complex beta{0.0, 0.0};
};

using Rhs = std::function<void(double, const OdeState&, OdeState&)>;

struct StepperOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double h_max = 0.0;  // <= 0: unbounded
};

struct StepperLog {
  long steps = 0;
  long rejected = 0;
  double max_error = 0.0;
  double h_last = 0.0;
};

// Integrates y from ta to tb exactly, never evaluating the right-hand side
// outside the open interval (ta, tb) so that envelope kinks at the ends are
// not straddled. after_step is called with the state after every accepted step.
void integrate_interval(const Rhs& rhs, OdeState& y, double ta, double tb,
                        const StepperOptions& opt, StepperLog& log,
                        const std::function<void(double, const OdeState&)>& after_step);

}  // namespace iongate::detail
