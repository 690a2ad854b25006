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

#include <functional>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "iongate/gatemodel.hpp"
#include "iongate/propagate.hpp"

namespace iongate {

struct CrosstalkOptions {
  int n_max = 20;
  StepPolicy policy{};
  StateVector psi0_spin = spin_down();
  int trace_samples = 0;  // > 0 records P_up at that many evenly spaced times
  int workers = 1;
};

struct ZoneResult {
  Zone zone = Zone::Target;
  double infidelity = 0.0;
  std::vector<double> t;
  std::vector<double> p_up;
  SpinMotionState final_state;
};

// exp(+i theta sigma_y / 2) |psi0>, the rotation the target ion should undergo.
StateVector addressing_target_state(const PhysicalDriveConfig& drive, const StateVector& psi0);

// Propagates one zone of the microwave drive and scores it against the target
// rotation (target zone) or the identity (spectator zone).
ZoneResult run_zone(const PhysicalDriveConfig& drive, Zone zone,
                    const CrosstalkOptions& options = {});

// Both zones under the same drive; the zones are uncoupled and run independently.
std::pair<ZoneResult, ZoneResult> run_crosstalk(const PhysicalDriveConfig& drive,
                                                const CrosstalkOptions& options = {});
std::pair<ZoneResult, ZoneResult> run_crosstalk(PhysicalDriveConfig drive,
                                                double spectator_mode_freq,
                                                double spectator_E_ratio,
                                                const CrosstalkOptions& options = {});

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

// Golden-section search for a minimum of f on [a, b] to the given tolerance in x.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double tolerance);

// Coarse grid scan followed by golden-section refinement (1 ns default). Throws
// ConfigError when the best grid point sits on the window boundary.
ScalarMinimum minimize_over_window(const std::function<double(double)>& f, double lo, double hi,
                                   double tolerance = 1e-9, int grid_points = 16);

// [max(2 t_r, tau/2) + tau/20, 1.25 tau + 2 t_r] with tau = 2 pi K / Delta.
std::pair<double, double> default_gate_time_window(const PhysicalDriveConfig& drive);

// Total duration (ramps included) minimizing the target-zone infidelity.
ScalarMinimum optimize_gate_time(const PhysicalDriveConfig& drive,
                                 std::pair<double, double> window,
                                 const CrosstalkOptions& options = {});
ScalarMinimum optimize_gate_time(const PhysicalDriveConfig& drive,
                                 const CrosstalkOptions& options = {});

// Same search for the abstract gate (no ramps), against exp(-i theta sigma_alpha/2).
ScalarMinimum optimize_gate_time(const GateConfig& cfg, std::pair<double, double> window,
                                 int n_max = 20, const StepPolicy& policy = {});

struct RampSweepRow {
  double t_r = 0.0;
  double t_g = 0.0;
  double target_infidelity = 0.0;
  double spectator_infidelity = 0.0;
};

struct RampSweep {
  std::vector<RampSweepRow> rows;
  // Smallest t_r with both infidelities below 1e-6, if any.
  std::optional<double> threshold_t_r;
};

// Re-optimizes the gate time for every t_r, then scores both zones.
RampSweep ramp_sweep(const PhysicalDriveConfig& drive, const std::vector<double>& t_r_values,
                     const CrosstalkOptions& options = {});

struct FieldSweepRow {
  double ratio = 0.0;
  double omega_s = 0.0;
  double spectator_infidelity = 0.0;
};

// Spectator infidelity over (Omega_E,s / Omega_E,t, omega_s) at the drive's fixed
// duration (optimized first when drive.duration is 0). Rows ordered by omega_s, then ratio.
std::vector<FieldSweepRow> spectator_field_sweep(const PhysicalDriveConfig& drive,
                                                 const std::vector<double>& ratios,
                                                 const std::vector<double>& spectator_freqs,
                                                 const CrosstalkOptions& options = {});

void write_ramp_csv(std::ostream& out, const RampSweep& sweep);
void write_field_csv(std::ostream& out, const std::vector<FieldSweepRow>& rows);
// t, P_up_target, P_up_spectator
void write_trace_csv(std::ostream& out, const ZoneResult& target, const ZoneResult& spectator);

}  // namespace iongate
