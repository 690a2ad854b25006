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

#include "iongate/addressing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iongate/csv.hpp"
#include "iongate/errors.hpp"
#include "iongate/infidelity.hpp"
#include "parallel.hpp"

namespace iongate {

StateVector addressing_target_state(const PhysicalDriveConfig& drive, const StateVector& psi0) {
  return spin_rotation({0.0, 1.0, 0.0}, -drive.theta) * psi0;
}

ZoneResult run_zone(const PhysicalDriveConfig& drive, Zone zone, const CrosstalkOptions& options) {
  drive.validate();
  const HilbertSpace space{1, options.n_max};
  const StateVector psi0_spin = options.psi0_spin.normalized();
  const SpinMotionState psi0 = SpinMotionState::product(space, psi0_spin, 0);
  const HamiltonianSchedule h = build_microwave_hamiltonian(drive, zone);

  StepPolicy policy = options.policy;
  policy.sample_times.clear();
  if (options.trace_samples > 1) {
    for (int k = 0; k < options.trace_samples; ++k) {
      policy.sample_times.push_back(h.duration * k / (options.trace_samples - 1));
    }
    policy.sample_times.back() = h.duration;
  }
  auto r = evolve_schrodinger(h, psi0, policy);

  const StateVector target =
      zone == Zone::Target ? addressing_target_state(drive, psi0_spin) : psi0_spin;
  ZoneResult out{zone, spin_infidelity(r.final_state, target), {}, {}, std::move(r.final_state)};
  for (const auto& s : r.samples) {
    out.t.push_back(s.t);
    out.p_up.push_back(s.state.reduced_spin()(0, 0).real());
  }
  return out;
}

std::pair<ZoneResult, ZoneResult> run_crosstalk(const PhysicalDriveConfig& drive,
                                                const CrosstalkOptions& options) {
  std::array<std::optional<ZoneResult>, 2> zones;
  detail::parallel_for(2, options.workers, [&](std::size_t i) {
    zones[i] = run_zone(drive, i == 0 ? Zone::Target : Zone::Spectator, options);
  });
  return {std::move(*zones[0]), std::move(*zones[1])};
}

std::pair<ZoneResult, ZoneResult> run_crosstalk(PhysicalDriveConfig drive,
                                                double spectator_mode_freq,
                                                double spectator_E_ratio,
                                                const CrosstalkOptions& options) {
  drive.omega_spectator = spectator_mode_freq;
  drive.omega_E_spectator = spectator_E_ratio * drive.omega_E_target;
  return run_crosstalk(drive, options);
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double tolerance) {
  if (!(b > a) || !(tolerance > 0.0)) throw std::invalid_argument("invalid search interval");
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (b - a > tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc < fd ? ScalarMinimum{c, fc, evals} : ScalarMinimum{d, fd, evals};
}

namespace {

ScalarMinimum minimize_parallel(const std::function<double(double)>& f, double lo, double hi,
                                double tolerance, int grid_points, int workers) {
  if (!(hi > lo)) throw ConfigError("empty search window");
  if (grid_points < 3) throw std::invalid_argument("need at least three grid points");
  std::vector<double> xs(grid_points), fs(grid_points);
  for (int i = 0; i < grid_points; ++i) xs[i] = lo + (hi - lo) * i / (grid_points - 1);
  detail::parallel_for(xs.size(), workers, [&](std::size_t i) { fs[i] = f(xs[i]); });
  const int best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  if (best == 0 || best == grid_points - 1) {
    const double w = hi - lo;
    std::ostringstream msg;
    msg << "optimum lies on the search window boundary at " << xs[best]
        << "; widen the window, e.g. to [" << std::max(0.0, lo - 0.5 * w) << ", " << hi + 0.5 * w
        << "]";
    throw ConfigError(msg.str());
  }
  ScalarMinimum m = golden_section_minimize(f, xs[best - 1], xs[best + 1], tolerance);
  m.evaluations += grid_points;
  if (fs[best] < m.value) {
    m.x = xs[best];
    m.value = fs[best];
  }
  return m;
}

}  // namespace

ScalarMinimum minimize_over_window(const std::function<double(double)>& f, double lo, double hi,
                                   double tolerance, int grid_points) {
  return minimize_parallel(f, lo, hi, tolerance, grid_points, 1);
}

std::pair<double, double> default_gate_time_window(const PhysicalDriveConfig& drive) {
  const double tau = kTwoPi * drive.K / drive.gate_detuning();
  return {std::max(2.0 * drive.t_r, 0.5 * tau) + 0.05 * tau, 1.25 * tau + 2.0 * drive.t_r};
}

ScalarMinimum optimize_gate_time(const PhysicalDriveConfig& drive,
                                 std::pair<double, double> window,
                                 const CrosstalkOptions& options) {
  drive.validate();
  if (!(window.first > 2.0 * drive.t_r)) {
    throw ConfigError("gate-time window must start after both ramps (2 t_r)");
  }
  CrosstalkOptions inner = options;
  inner.trace_samples = 0;
  inner.workers = 1;
  auto f = [&](double total) {
    PhysicalDriveConfig d = drive;
    d.duration = total;
    return run_zone(d, Zone::Target, inner).infidelity;
  };
  return minimize_parallel(f, window.first, window.second, 1e-9, 16, options.workers);
}

ScalarMinimum optimize_gate_time(const PhysicalDriveConfig& drive,
                                 const CrosstalkOptions& options) {
  return optimize_gate_time(drive, default_gate_time_window(drive), options);
}

ScalarMinimum optimize_gate_time(const GateConfig& cfg, std::pair<double, double> window,
                                 int n_max, const StepPolicy& policy) {
  cfg.validate();
  if (!(cfg.omega_E > 0.0)) throw ConfigError("the closure detuning needs omega_E > 0");
  const HilbertSpace space{1, n_max};
  const SpinMotionState psi0 = SpinMotionState::product(space, spin_down(), 0);
  auto f = [&](double total) {
    const auto r = evolve_schrodinger(build_gate_hamiltonian(cfg, cfg.detuning(), total), psi0,
                                      policy);
    return gate_infidelity(r.final_state, cfg, spin_down());
  };
  return minimize_over_window(f, window.first, window.second);
}

RampSweep ramp_sweep(const PhysicalDriveConfig& drive, const std::vector<double>& t_r_values,
                     const CrosstalkOptions& options) {
  RampSweep sweep;
  sweep.rows.resize(t_r_values.size());
  CrosstalkOptions inner = options;
  inner.trace_samples = 0;
  inner.workers = 1;
  detail::parallel_for(t_r_values.size(), options.workers, [&](std::size_t i) {
    PhysicalDriveConfig d = drive;
    d.t_r = t_r_values[i];
    d.duration = 0.0;
    d.duration = optimize_gate_time(d, inner).x;
    const auto [target, spectator] = run_crosstalk(d, inner);
    sweep.rows[i] = {d.t_r, d.duration, target.infidelity, spectator.infidelity};
  });
  std::sort(sweep.rows.begin(), sweep.rows.end(),
            [](const RampSweepRow& a, const RampSweepRow& b) { return a.t_r < b.t_r; });
  for (const auto& row : sweep.rows) {
    if (row.target_infidelity < 1e-6 && row.spectator_infidelity < 1e-6) {
      sweep.threshold_t_r = row.t_r;
      break;
    }
  }
  return sweep;
}

std::vector<FieldSweepRow> spectator_field_sweep(const PhysicalDriveConfig& drive,
                                                 const std::vector<double>& ratios,
                                                 const std::vector<double>& spectator_freqs,
                                                 const CrosstalkOptions& options) {
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("E-field ratios must lie in [0, 1]");
  }
  PhysicalDriveConfig base = drive;
  CrosstalkOptions inner = options;
  inner.trace_samples = 0;
  inner.workers = 1;
  if (base.duration <= 0.0) base.duration = optimize_gate_time(base, options).x;

  std::vector<FieldSweepRow> rows;
  for (double w : spectator_freqs)
    for (double r : ratios) rows.push_back({r, w, 0.0});
  detail::parallel_for(rows.size(), options.workers, [&](std::size_t i) {
    PhysicalDriveConfig d = base;
    d.omega_spectator = rows[i].omega_s;
    d.omega_E_spectator = rows[i].ratio * d.omega_E_target;
    rows[i].spectator_infidelity = run_zone(d, Zone::Spectator, inner).infidelity;
  });
  return rows;
}

void write_ramp_csv(std::ostream& out, const RampSweep& sweep) {
  out << "t_r,I_target,I_spectator,t_g\n";
  for (const auto& r : sweep.rows) {
    write_csv_row(out, r.t_r, r.target_infidelity, r.spectator_infidelity, r.t_g);
  }
}

void write_field_csv(std::ostream& out, const std::vector<FieldSweepRow>& rows) {
  out << "ratio,omega_s,I_spectator\n";
  for (const auto& r : rows) write_csv_row(out, r.ratio, r.omega_s, r.spectator_infidelity);
}

void write_trace_csv(std::ostream& out, const ZoneResult& target, const ZoneResult& spectator) {
  if (target.t.size() != spectator.t.size()) {
    throw std::invalid_argument("zone traces have different lengths");
  }
  out << "t,P_up_target,P_up_spectator\n";
  for (std::size_t k = 0; k < target.t.size(); ++k) {
    write_csv_row(out, target.t[k], target.p_up[k], spectator.p_up[k]);
  }
}

}  // namespace iongate
