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


// Full microwave-model searches; each gate-time optimization takes tens of seconds.

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "iongate/addressing.hpp"

using namespace iongate;

TEST_SUITE("addressing-slow") {
  TEST_CASE("single ramp time: optimized gate near 40 us with both zones below 1e-6") {
    const PhysicalDriveConfig d;
    const auto sweep = ramp_sweep(d, {15e-6});
    REQUIRE(sweep.rows.size() == 1);
    const auto& row = sweep.rows[0];
    CHECK(row.t_g == doctest::Approx(40.2e-6).epsilon(1e-6 / 40.2e-6));
    CHECK(row.target_infidelity < 1e-6);
    CHECK(row.spectator_infidelity < 1e-6);
    REQUIRE(sweep.threshold_t_r.has_value());
    CHECK(*sweep.threshold_t_r == 15e-6);

    std::ostringstream a, b;
    write_ramp_csv(a, sweep);
    write_ramp_csv(b, ramp_sweep(d, {15e-6}));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("t_r,I_target,I_spectator,t_g\n", 0) == 0);
  }

  TEST_CASE("longer ramps keep both zones below 1e-6") {
    const PhysicalDriveConfig d;
    const auto sweep = ramp_sweep(d, {13e-6, 20e-6});
    REQUIRE(sweep.rows.size() == 2);
    for (const auto& row : sweep.rows) {
      CAPTURE(row.t_r);
      CHECK(row.target_infidelity < 1e-6);
      CHECK(row.spectator_infidelity < 1e-6);
    }
  }

  TEST_CASE("halving the target E-field stretches the pulse-area duration by about sqrt(2)") {
    // A sin^2 ramp of length t_r carries half the area of a flat segment, so the
    // flat-equivalent gate time is T - t_r; that is what must scale like the
    // loop-closure time 2 pi K / Delta, which grows by sqrt(2) when Omega_E halves.
    const PhysicalDriveConfig d;
    PhysicalDriveConfig half = d;
    half.omega_E_target /= 2;
    const double full = optimize_gate_time(d).x - d.t_r;
    const double weak = optimize_gate_time(half).x - half.t_r;
    CAPTURE(full);
    CAPTURE(weak);
    CHECK(weak / full == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
  }
}
