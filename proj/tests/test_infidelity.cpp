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
#include <sstream>
#include <string>

#include "doctest.h"
#include "iongate/errors.hpp"
#include "iongate/infidelity.hpp"
#include "oracles.hpp"

using namespace iongate;

namespace {

// Closed forms typed out independently of the library.
double heating_formula(double ndot, double wp, double we, double th, double K) {
  return ndot * std::sqrt(wp * th * th * th / (8 * oracle::kPi * K * we * we * we));
}

double dephasing_formula(double eta, double wp, double we, double th, double K, int n) {
  return eta * std::sqrt(wp * std::pow(th, 3) / (32 * oracle::kPi * K * std::pow(we, 3))) *
         (2 * n + 1 + 3 * th * we / (2 * oracle::kPi * K * wp));
}

double static_formula(double gd, double wp, double we, double th, double K, int n) {
  return gd * gd * th * th / (16 * we * we) * (2 * n + 1 + 2 * th * we / (oracle::kPi * K * wp));
}

}  // namespace

TEST_SUITE("infidelity") {
  TEST_CASE("closed forms at the reference parameters") {
    const GateConfig cfg;
    CHECK(analytic_infidelity(cfg, NoiseChannel::heating(100), 0, 1.0) ==
          doctest::Approx(8.84e-6).epsilon(2e-3));
    CHECK(analytic_infidelity(cfg, NoiseChannel::dephasing(1), 0, 1.0) ==
          doctest::Approx(1.70e-6).epsilon(3e-3));
    CHECK(analytic_infidelity(cfg, NoiseChannel::static_shift(kTwoPi * 1e3), 0, 1.0) ==
          doctest::Approx(7.87e-4).epsilon(2e-3));
    for (const auto& ch : {NoiseChannel::heating(0), NoiseChannel::dephasing(0),
                           NoiseChannel::static_shift(0)}) {
      CHECK(analytic_infidelity(cfg, ch, 3, 1.0) == 0.0);
    }
  }

  TEST_CASE("closed forms match an independent transcription on a grid") {
    for (double we : {kTwoPi * 2e4, kTwoPi * 1e5, kTwoPi * 7e5}) {
      for (double wp : {kTwoPi * 5e2, kTwoPi * 2e3}) {
        for (int K : {1, 2, 5}) {
          for (double th : {kPi / 4, kPi / 2, kPi}) {
            for (int n : {0, 3, 10}) {
              GateConfig cfg;
              cfg.omega_E = we;
              cfg.omega_p = wp;
              cfg.K = K;
              cfg.theta = th;
              const double l2 = 0.7;
              CHECK(analytic_infidelity(cfg, NoiseChannel::heating(321.0), n, l2) ==
                    doctest::Approx(l2 * heating_formula(321.0, wp, we, th, K)).epsilon(1e-13));
              CHECK(analytic_infidelity(cfg, NoiseChannel::dephasing(4.5), n, l2) ==
                    doctest::Approx(l2 * dephasing_formula(4.5, wp, we, th, K, n)).epsilon(1e-13));
              CHECK(analytic_infidelity(cfg, NoiseChannel::static_shift(-900.0), n, l2) ==
                    doctest::Approx(l2 * static_formula(900.0, wp, we, th, K, n)).epsilon(1e-13));
            }
          }
        }
      }
    }
  }

  TEST_CASE("scaling with loops and E-field strength") {
    GateConfig k1, k4;
    k4.K = 4;
    const auto heat = NoiseChannel::heating(250.0);
    CHECK(analytic_infidelity(k4, heat, 0, 1.0) / analytic_infidelity(k1, heat, 0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-14));
    GateConfig strong;
    strong.omega_E = 2 * k1.omega_E;
    CHECK(analytic_infidelity(strong, heat, 0, 1.0) / analytic_infidelity(k1, heat, 0, 1.0) ==
          doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
  }

  TEST_CASE("spin variance along the gate axis") {
    const Axis y{0, 1, 0};
    CHECK(lambda_sq(spin_down(), y) == doctest::Approx(1.0));
    StateVector plus_y(2);
    plus_y << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
    CHECK(lambda_sq(plus_y, y) == doctest::Approx(0.0).epsilon(1e-15));
    // Bloch vector 45 degrees from the axis: <sigma_y> = cos(pi/4).
    StateVector tilted(2);
    const double a = kPi / 4;
    tilted << std::cos(a / 2), Complex(0.0, std::sin(a / 2));
    CHECK(lambda_sq(tilted, y) == doctest::Approx(0.5));
  }

  TEST_CASE("spin infidelity of reference states") {
    const GateConfig cfg;
    const HilbertSpace space{1, 4};
    ComplexOperator rho = ComplexOperator::Zero(space.dim(), space.dim());
    rho(space.index(0, 0), space.index(0, 0)) = 0.5;
    rho(space.index(1, 2), space.index(1, 2)) = 0.5;
    const auto mixed = SpinMotionState::density(space, rho);
    CHECK(gate_infidelity(mixed, cfg, spin_down()) == doctest::Approx(0.5));

    const StateVector target = target_spin_state(cfg, spin_down());
    const auto perfect = SpinMotionState::product(space, target, 1);
    CHECK(gate_infidelity(perfect, cfg, spin_down()) < 1e-15);
  }

  TEST_CASE("numeric infidelity without noise vanishes") {
    const GateConfig cfg;
    CHECK(numeric_infidelity(cfg, NoiseChannel::heating(0.0), 0, spin_down()) < 1e-9);
    CHECK(numeric_infidelity(cfg, NoiseChannel::static_shift(0.0), 0, spin_down()) < 1e-9);
  }

  TEST_CASE("static shift: numeric vs closed form and symmetry in sign") {
    const GateConfig cfg;
    const double gd = kTwoPi * 1e3;
    const double num = numeric_infidelity(cfg, NoiseChannel::static_shift(gd), 0, spin_down());
    const double ana = analytic_infidelity(cfg, NoiseChannel::static_shift(gd), 0, 1.0);
    CHECK(ana == doctest::Approx(7.9e-4).epsilon(0.01));
    CHECK(std::abs(num - ana) / ana < 0.2);

    const double small = kTwoPi * 100.0;
    const double up = numeric_infidelity(cfg, NoiseChannel::static_shift(small), 0, spin_down());
    const double down = numeric_infidelity(cfg, NoiseChannel::static_shift(-small), 0, spin_down());
    CHECK(std::abs(up - down) / up < 0.05);
  }

  TEST_CASE("numeric heating and dephasing follow the closed forms") {
    const GateConfig cfg;
    const double heat = numeric_infidelity(cfg, NoiseChannel::heating(1000), 0, spin_down());
    CHECK(heat == doctest::Approx(analytic_infidelity(cfg, NoiseChannel::heating(1000), 0, 1.0))
                      .epsilon(0.01));
    const double d0 = numeric_infidelity(cfg, NoiseChannel::dephasing(10), 0, spin_down());
    const double d10 = numeric_infidelity(cfg, NoiseChannel::dephasing(10), 10, spin_down());
    const double c = 3 * cfg.theta * cfg.omega_E / (kTwoPi * cfg.K * cfg.omega_p);
    CHECK(d10 / d0 == doctest::Approx((21 + c) / (1 + c)).epsilon(0.25));
  }

  TEST_CASE("default truncation") {
    CHECK(default_n_max(0) == 20);
    CHECK(default_n_max(2) == 20);
    CHECK(default_n_max(10) == 60);
  }

  TEST_CASE("sweeps are ordered, parallel-safe and reproducible") {
    const GateConfig cfg;
    CHECK(compare_sweep(cfg, NoiseKind::Heating, {}, {0}, {1}, spin_down()).empty());
    const std::vector<double> rates = {300.0, 30.0};
    const auto serial = compare_sweep(cfg, NoiseKind::Heating, rates, {0}, {2, 1}, spin_down(), 1);
    const auto parallel = compare_sweep(cfg, NoiseKind::Heating, rates, {0}, {2, 1}, spin_down(), 3);
    REQUIRE(serial.size() == 4);
    CHECK(serial[0].K == 1);
    CHECK(serial[0].channel.rate == 30.0);
    CHECK(serial[3].K == 2);
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].numeric == parallel[i].numeric);
      CHECK(serial[i].analytic == parallel[i].analytic);
      CHECK(serial[i].n_max == 20);
      CHECK(serial[i].lambda_sq == doctest::Approx(1.0));
    }
    std::ostringstream a, b;
    write_sweep_csv(a, serial, false);
    write_sweep_csv(b, parallel, false);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("channel,rate,K,n0,I_analytic,I_numeric,lambda_sq,n_max\n", 0) == 0);
    std::ostringstream timed;
    write_sweep_csv(timed, serial);
    CHECK(timed.str().find(",runtime_s\n") != std::string::npos);
  }

  TEST_CASE("invalid channels are rejected") {
    const GateConfig cfg;
    CHECK_THROWS_AS(analytic_infidelity(cfg, NoiseChannel::heating(-1), 0, 1.0), ConfigError);
    CHECK_THROWS_AS(numeric_infidelity(cfg, NoiseChannel::dephasing(-2), 0, spin_down()),
                    ConfigError);
    CHECK(parse_noise_kind("dephasing") == NoiseKind::MotionalDephasing);
    CHECK_THROWS_AS(parse_noise_kind("flicker"), ConfigError);
  }
}
