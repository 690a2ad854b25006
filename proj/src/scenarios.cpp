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


#include "iongate/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "iongate/addressing.hpp"
#include "iongate/csv.hpp"
#include "iongate/errors.hpp"
#include "iongate/gatemodel.hpp"
#include "iongate/infidelity.hpp"
#include "iongate/noise.hpp"
#include "iongate/propagate.hpp"

#ifndef IONGATE_VERSION
#define IONGATE_VERSION "unknown"
#endif

namespace iongate {
namespace {

using nlohmann::json;

// --- Schema -----------------------------------------------------------------

enum class Kind { Real, Int, String, Freq, Axis, IntList, RealList, FreqList };

bool is_frequency(Kind k) { return k == Kind::Freq || k == Kind::FreqList; }

const char* kind_label(Kind k) {
  switch (k) {
    case Kind::Real: return "number";
    case Kind::Int: return "integer";
    case Kind::String: return "string";
    case Kind::Freq: return "frequency";
    case Kind::Axis: return "axis";
    case Kind::IntList: return "integer list";
    case Kind::RealList: return "number list";
    case Kind::FreqList: return "frequency list";
  }
  return "?";
}

struct Key {
  std::string name;
  Kind kind;
  json fallback;  // null: derived from other keys
  std::string unit;
  std::string doc;
  double min = -std::numeric_limits<double>::infinity();
  std::vector<std::string> choices = {};
};

// Keys given with a _hz suffix, for scenario checks that depend on the spelling.
using HzKeys = std::set<std::string>;

struct Artifacts {
  std::filesystem::path dir;
  std::vector<std::string> files;
  json timings = json::object();

  void write(const std::string& name, const std::function<void(std::ostream&)>& fill) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    fill(out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
    files.push_back(path.string());
  }
};

struct Scenario {
  std::string name;
  std::string summary;
  std::vector<Key> keys;
  std::function<void(json&, const HzKeys&)> check;
  std::function<json(const ScenarioConfig&, Artifacts&)> run;
};

// Rounds to the 12 significant digits used in every artifact.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

json rounded(const json& v) {
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_array()) {
    json out = json::array();
    for (const auto& e : v) out.push_back(rounded(e));
    return out;
  }
  if (v.is_object()) {
    json out = json::object();
    for (auto it = v.begin(); it != v.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return v;
}

double real_value(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("key '" + key + "' must be finite");
  return x;
}

int int_value(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError("key '" + key + "' is out of range");
  }
  return static_cast<int>(x);
}

json parse_axis(const json& v, const std::string& key) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "x") return json::array({1.0, 0.0, 0.0});
    if (s == "y") return json::array({0.0, 1.0, 0.0});
    if (s == "z") return json::array({0.0, 0.0, 1.0});
    throw ConfigError("key '" + key + "' must be \"x\", \"y\", \"z\" or a 3-vector");
  }
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError("key '" + key + "' must be \"x\", \"y\", \"z\" or a 3-vector");
  }
  json out = json::array();
  double norm = 0.0;
  for (const auto& e : v) {
    const double c = real_value(e, key);
    norm += c * c;
    out.push_back(c);
  }
  if (norm == 0.0) throw ConfigError("key '" + key + "' must be a nonzero vector");
  return out;
}

json parse_value(const Key& key, const json& v, bool in_hz) {
  const double scale = in_hz ? kTwoPi : 1.0;
  auto check_min = [&](double x) {
    if (x < key.min) {
      throw ConfigError("key '" + key.name + "' must be >= " + format_number(key.min));
    }
  };
  switch (key.kind) {
    case Kind::Real:
    case Kind::Freq: {
      const double x = real_value(v, key.name) * scale;
      check_min(x);
      return x;
    }
    case Kind::Int: {
      const int x = int_value(v, key.name);
      check_min(x);
      return x;
    }
    case Kind::String: {
      if (!v.is_string()) throw ConfigError("key '" + key.name + "' must be a string");
      const auto s = v.get<std::string>();
      if (!key.choices.empty() &&
          std::find(key.choices.begin(), key.choices.end(), s) == key.choices.end()) {
        throw ConfigError("key '" + key.name + "' has unsupported value \"" + s + "\"");
      }
      return s;
    }
    case Kind::Axis:
      return parse_axis(v, key.name);
    case Kind::IntList:
    case Kind::RealList:
    case Kind::FreqList: {
      if (!v.is_array() || v.empty()) {
        throw ConfigError("key '" + key.name + "' must be a non-empty array");
      }
      json out = json::array();
      for (const auto& e : v) {
        if (key.kind == Kind::IntList) {
          const int x = int_value(e, key.name);
          check_min(x);
          out.push_back(x);
        } else {
          const double x = real_value(e, key.name) * scale;
          check_min(x);
          out.push_back(x);
        }
      }
      return out;
    }
  }
  return v;
}

// --- Shared key groups --------------------------------------------------------

std::vector<Key> gate_keys() {
  return {
      {"omega_p", Kind::Freq, kTwoPi * 2e3, "rad/s", "spin-dependent force", 0.0},
      {"omega_E", Kind::Freq, kTwoPi * 1e5, "rad/s", "E-field force", 0.0},
      {"theta", Kind::Real, kPi / 2, "rad", "target rotation angle", 0.0},
      {"K", Kind::Int, 1, "", "phase-space loops", 1},
      {"phi", Kind::Real, 0.0, "rad", "E-field phase"},
      {"axis", Kind::Axis, json::array({0.0, 1.0, 0.0}), "", "rotation axis (\"x\", \"y\", \"z\" or vector)"},
  };
}

const std::vector<std::string> kSpinChoices = {"up", "down", "+x", "-x", "+y", "-y"};

Key initial_spin_key() {
  return {"initial_spin", Kind::String, "down", "", "initial spin state", -1e300, kSpinChoices};
}

StateVector spin_state(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "up") return spin_up();
  if (name == "down") return spin_down();
  StateVector v(2);
  if (name == "+x") v << r, r;
  else if (name == "-x") v << r, -r;
  else if (name == "+y") v << r, Complex(0.0, r);
  else if (name == "-y") v << r, Complex(0.0, -r);
  else throw ConfigError("unsupported initial_spin \"" + name + "\"");
  return v;
}

Axis axis_of(const json& v) { return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}; }

GateConfig gate_from(const json& p) {
  GateConfig cfg;
  cfg.omega_p = p.at("omega_p").get<double>();
  cfg.omega_E = p.at("omega_E").get<double>();
  cfg.theta = p.at("theta").get<double>();
  cfg.K = p.at("K").get<int>();
  cfg.phi = p.at("phi").get<double>();
  cfg.axis = axis_of(p.at("axis"));
  return cfg;
}

std::vector<Key> drive_keys() {
  const PhysicalDriveConfig d;
  return {
      {"omega_g", Kind::Freq, d.omega_g, "rad/s", "gradient Rabi frequency", 0.0},
      {"omega_rf_gradient", Kind::Freq, d.omega_rf_gradient, "rad/s", "gradient frequency", 0.0},
      {"omega_target", Kind::Freq, d.omega_target, "rad/s", "target motional frequency", 0.0},
      {"omega_spectator", Kind::Freq, d.omega_spectator, "rad/s", "spectator motional frequency", 0.0},
      {"omega_E_target", Kind::Freq, d.omega_E_target, "rad/s", "E-field at the target", 0.0},
      {"omega_E_spectator", Kind::Freq, d.omega_E_spectator, "rad/s", "E-field at the spectator", 0.0},
      {"bessel_argument", Kind::Real, d.bessel_argument, "", "4 omega_mu / delta", 0.0},
      {"theta", Kind::Real, d.theta, "rad", "target rotation angle", 0.0},
      {"K", Kind::Int, d.K, "", "phase-space loops", 1},
      {"Delta", Kind::Freq, 0.0, "rad/s", "gate detuning (0: closure value)", 0.0},
      {"n_max", Kind::Int, 20, "", "Fock truncation", 2},
  };
}

PhysicalDriveConfig drive_from(const json& p) {
  PhysicalDriveConfig d;
  d.omega_g = p.at("omega_g").get<double>();
  d.omega_rf_gradient = p.at("omega_rf_gradient").get<double>();
  d.omega_target = p.at("omega_target").get<double>();
  d.omega_spectator = p.at("omega_spectator").get<double>();
  d.omega_E_target = p.at("omega_E_target").get<double>();
  d.omega_E_spectator = p.at("omega_E_spectator").get<double>();
  d.bessel_argument = p.at("bessel_argument").get<double>();
  d.theta = p.at("theta").get<double>();
  d.K = p.at("K").get<int>();
  d.Delta = p.at("Delta").get<double>();
  if (p.contains("t_r")) d.t_r = p.at("t_r").get<double>();
  if (p.contains("duration")) d.duration = p.at("duration").get<double>();
  return d;
}

template <typename T>
std::vector<T> list_of(const json& v) {
  return v.get<std::vector<T>>();
}

// --- Scenario bodies ----------------------------------------------------------

json run_ideal_gate(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  const GateConfig gate = gate_from(p);
  const int n_max = p.at("n_max").get<int>();
  const int n0 = p.at("n0").get<int>();
  const StateVector psi0 = spin_state(p.at("initial_spin").get<std::string>());
  const HilbertSpace space{1, n_max};
  const auto h = build_ideal_gate_hamiltonian(gate);
  const auto res = evolve_schrodinger(h, SpinMotionState::product(space, psi0, n0));
  const double infid = gate_infidelity(res.final_state, gate, psi0);
  const double entropy = von_neumann_entropy(res.final_state.reduced_spin());
  json r = {
      {"Delta", num(gate.detuning())},
      {"Delta_hz", num(gate.detuning() / kTwoPi)},
      {"t_g", num(gate.gate_time())},
      {"infidelity", num(infid)},
      {"entanglement_entropy", num(entropy)},
      {"final_displacement_abs", num(std::abs(res.displacement))},
      {"norm_error", num(res.norm_error)},
      {"max_truncation_tail", num(res.max_truncation_tail)},
      {"step_count", res.step_count},
  };
  out.write("ideal_gate.json", [&](std::ostream& s) { s << r.dump(2) << '\n'; });
  return r;
}

json run_noise_sweep(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  const GateConfig gate = gate_from(p);
  const NoiseKind kind = parse_noise_kind(p.at("channel").get<std::string>());
  NumericOptions options;
  options.n_max = p.at("n_max").get<int>();
  const StateVector psi0 = spin_state(p.at("initial_spin").get<std::string>());
  const auto rows = compare_sweep(gate, kind, list_of<double>(p.at("rates")),
                                  list_of<int>(p.at("n0_values")), list_of<int>(p.at("K_values")),
                                  psi0, cfg.workers, options);
  out.write("noise_sweep.csv", [&](std::ostream& s) { write_sweep_csv(s, rows, false); });

  double worst = 0.0;
  int compared = 0;
  json times = json::array();
  for (const auto& r : rows) {
    times.push_back({{"rate", num(r.channel.rate)}, {"K", r.K}, {"n0", r.n0},
                     {"runtime_s", num(r.runtime_s)}});
    if (r.analytic >= 1e-6 && r.analytic <= 1e-2) {
      worst = std::max(worst, std::abs(r.numeric - r.analytic) / r.analytic);
      ++compared;
    }
  }
  out.timings["points"] = times;
  return {{"rows", rows.size()},
          {"compared_rows", compared},
          {"max_relative_deviation", num(worst)}};
}

json run_trajectories(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  const GateConfig gate = gate_from(p);
  const auto traj = phase_space_trajectories(gate, p.at("samples").get<int>());
  const double closure = std::max(std::abs(traj.first.alpha.back()),
                                  std::abs(traj.second.alpha.back()));
  out.write("trajectories.csv", [&](std::ostream& s) { write_trajectory_csv(s, traj); });
  if (closure >= 1e-9) {
    throw InvariantViolation("phase-space loop does not close: |alpha(t_g)| = " +
                             format_number(closure));
  }
  return {{"closure_residual", num(closure)},
          {"geometric_phase_plus", num(traj.first.geometric_phase)},
          {"geometric_phase_minus", num(traj.second.geometric_phase)},
          {"area_phase_plus", num(traj.first.area_phase)},
          {"area_phase_minus", num(traj.second.area_phase)},
          {"differential_phase", num(traj.second.geometric_phase - traj.first.geometric_phase)}};
}

CrosstalkOptions crosstalk_options(const ScenarioConfig& cfg) {
  CrosstalkOptions o;
  o.n_max = cfg.parameters.at("n_max").get<int>();
  o.workers = cfg.workers;
  return o;
}

json run_crosstalk_ramp(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  const PhysicalDriveConfig drive = drive_from(p);
  CrosstalkOptions options = crosstalk_options(cfg);
  const auto t_r_values = list_of<double>(p.at("t_r_values"));
  const auto sweep = ramp_sweep(drive, t_r_values, options);
  out.write("crosstalk_ramp.csv", [&](std::ostream& s) { write_ramp_csv(s, sweep); });

  json rows = json::array();
  for (const auto& r : sweep.rows) {
    rows.push_back({{"t_r", num(r.t_r)}, {"t_g", num(r.t_g)},
                    {"I_target", num(r.target_infidelity)},
                    {"I_spectator", num(r.spectator_infidelity)}});
  }
  json result = {{"rows", rows},
                 {"threshold_t_r", sweep.threshold_t_r ? num(*sweep.threshold_t_r) : json()}};

  const int samples = p.at("trace_samples").get<int>();
  if (samples > 0) {
    PhysicalDriveConfig traced = drive;
    traced.t_r = p.at("trace_t_r").get<double>();
    double t_g = 0.0;
    for (const auto& r : sweep.rows) {
      if (r.t_r == traced.t_r) t_g = r.t_g;
    }
    if (t_g == 0.0) t_g = optimize_gate_time(traced, options).x;
    traced.duration = t_g;
    options.trace_samples = samples;
    const auto zones = run_crosstalk(traced, options);
    out.write("crosstalk_trace.csv",
              [&](std::ostream& s) { write_trace_csv(s, zones.first, zones.second); });
    result["trace"] = {{"t_r", num(traced.t_r)}, {"t_g", num(t_g)},
                       {"I_target", num(zones.first.infidelity)},
                       {"I_spectator", num(zones.second.infidelity)}};
  }
  return result;
}

json run_crosstalk_field(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  PhysicalDriveConfig drive = drive_from(p);
  const CrosstalkOptions options = crosstalk_options(cfg);
  if (drive.duration == 0.0) drive.duration = optimize_gate_time(drive, options).x;
  const auto rows = spectator_field_sweep(drive, list_of<double>(p.at("ratios")),
                                          list_of<double>(p.at("spectator_freqs")), options);
  out.write("crosstalk_field.csv", [&](std::ostream& s) { write_field_csv(s, rows); });
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"ratio", num(r.ratio)}, {"omega_s", num(r.omega_s)},
                     {"I_spectator", num(r.spectator_infidelity)}});
  }
  return {{"t_g", num(drive.duration)}, {"rows", table}};
}

json run_multi_ion(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  const double omega_p = p.at("omega_p").get<double>();
  const double Delta = p.at("Delta").get<double>();
  const double theta = p.at("theta").get<double>();
  const int K = p.at("K").get<int>();
  const Axis axis = axis_of(p.at("axis"));
  const int n_max = p.at("n_max").get<int>();
  const auto com = ModeDescriptor::center_of_mass(2);
  const auto stretch = ModeDescriptor::stretch();
  const auto segments = echo_segments(Delta, K);

  auto sequence = [&](double stretch_theta) {
    const auto a = build_collective_hamiltonian(com, axis, omega_p,
                                                collective_e_field(theta, Delta, K, omega_p),
                                                Delta, segments);
    const auto b = build_collective_hamiltonian(
        stretch, axis, omega_p, collective_e_field(stretch_theta, Delta, K, omega_p), Delta,
        segments);
    return compose_spin_echo_sequence({a, b}, n_max);
  };
  const StateVector down_down = kron(spin_down(), spin_down());
  auto entanglement = [&](const ComplexOperator& u) {
    const StateVector out_state = u * down_down;
    return negativity(out_state * out_state.adjoint());
  };
  const ComplexOperator single_rotation = spin_rotation(axis, 2.0 * theta);

  struct Row {
    std::string sequence;
    std::string target;
    double distance;
    double negativity;
  };
  std::vector<Row> rows;
  const auto u2 = sequence(theta);
  rows.push_back({"com+stretch", "1", phase_aligned_distance(on_qubit(2, 1, single_rotation), u2),
                  entanglement(u2)});
  const auto u1 = sequence(-theta);
  rows.push_back({"com-stretch", "0", phase_aligned_distance(on_qubit(2, 0, single_rotation), u1),
                  entanglement(u1)});
  const auto single = build_collective_hamiltonian(
      com, axis, omega_p, collective_e_field(theta, Delta, K, omega_p), Delta,
      {CollectiveSegment{kTwoPi * K / Delta, +1, +1}});
  const auto u_single = compose_spin_echo_sequence({single}, n_max);
  const auto collective = matrix_exponential(collective_operator(com, axis), Complex(0.0, -theta / 2));
  rows.push_back({"com-unechoed", "both", phase_aligned_distance(collective, u_single),
                  entanglement(u_single)});

  out.write("multi_ion.csv", [&](std::ostream& s) {
    s << "sequence,target_qubit,operator_distance,negativity\n";
    for (const auto& r : rows) write_csv_row(s, r.sequence, r.target, r.distance, r.negativity);
  });
  json result = json::array();
  for (const auto& r : rows) {
    result.push_back({{"sequence", r.sequence}, {"target_qubit", r.target},
                      {"operator_distance", num(r.distance)}, {"negativity", num(r.negativity)}});
  }
  return {{"sequences", result}};
}

json run_micromotion(const ScenarioConfig& cfg, Artifacts& out) {
  const auto& p = cfg.parameters;
  const double omega_rsb = p.at("omega_rsb").get<double>();
  const double omega_e = p.at("omega_e").get<double>();
  const double Delta = p.at("Delta").get<double>();
  const int loops = p.at("n_loops").get<int>();
  const int n_max = p.at("n_max").get<int>();
  const auto n_values = list_of<int>(p.at("n_values"));
  for (int n : n_values) {
    if (n + 2 > n_max) throw ConfigError("n_values must stay below n_max - 1");
  }
  const HilbertSpace space{1, n_max};
  const auto h = build_micromotion_hamiltonian(omega_rsb, omega_e, Delta, loops);
  const auto analytic = analytic_micromotion_propagator(omega_rsb, omega_e, Delta, loops, n_max);

  struct Row {
    std::string model;
    int n;
    std::array<double, 3> v;
  };
  std::vector<Row> rows;
  for (int n : n_values) {
    rows.push_back({"numeric", n, rotation_generator(propagate_spin_block(h, n_max, {}, n))});
    ComplexOperator block(2, 2);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) block(a, b) = analytic(space.index(a, n), space.index(b, n));
    }
    rows.push_back({"analytic", n, rotation_generator(block)});
  }

  // The main scheme at the same Fock states: the spin rotation must not depend on n.
  const GateConfig gate = gate_from(p);
  const int gate_n_max = p.at("gate_n_max").get<int>();
  std::vector<std::pair<int, double>> gate_rows;
  for (int n : n_values) {
    const auto res = evolve_schrodinger(build_ideal_gate_hamiltonian(gate),
                                        SpinMotionState::product({1, gate_n_max}, spin_down(), n));
    gate_rows.emplace_back(n, gate_infidelity(res.final_state, gate, spin_down()));
  }

  out.write("micromotion.csv", [&](std::ostream& s) {
    s << "model,n,v_x,v_y,v_z,rotation_angle\n";
    for (const auto& r : rows) {
      const double norm = std::sqrt(r.v[0] * r.v[0] + r.v[1] * r.v[1] + r.v[2] * r.v[2]);
      write_csv_row(s, r.model, r.n, r.v[0], r.v[1], r.v[2], 2.0 * norm);
    }
  });
  out.write("main_scheme_n.csv", [&](std::ostream& s) {
    s << "n,infidelity\n";
    for (const auto& [n, infid] : gate_rows) write_csv_row(s, n, infid);
  });

  json result = json::object();
  const double t_g = h.duration;
  if (n_values.size() >= 2) {
    const int n_lo = n_values.front();
    const int n_hi = n_values.back();
    const double dvz = rows[2 * (n_values.size() - 1)].v[2] - rows[0].v[2];
    const double predicted = omega_rsb * omega_rsb * t_g / Delta * (n_hi - n_lo);
    double spread = 0.0;
    for (const auto& [n, infid] : gate_rows) {
      spread = std::max(spread, std::abs(infid - gate_rows.front().second));
    }
    result = {{"n_low", n_lo},
              {"n_high", n_hi},
              {"delta_v_z", num(dvz)},
              {"predicted_delta_v_z", num(predicted)},
              {"relative_error", num(predicted != 0.0 ? std::abs(dvz - predicted) / std::abs(predicted)
                                                      : std::abs(dvz))},
              {"main_scheme_infidelity_spread", num(spread)}};
  }
  result["t_g"] = num(t_g);
  return result;
}

// --- Per-scenario checks --------------------------------------------------------

void check_gate(json& p) { gate_from(p).validate(); }

void check_noise(json& p, const HzKeys& hz) {
  check_gate(p);
  const NoiseKind kind = parse_noise_kind(p.at("channel").get<std::string>());
  if (hz.count("rates") && kind != NoiseKind::StaticShift) {
    throw ConfigError("key 'rates_hz' is only meaningful for the static channel; "
                      "heating and dephasing rates are given in 1/s as 'rates'");
  }
  if (p.at("rates").is_null()) {
    switch (kind) {
      case NoiseKind::Heating: p["rates"] = {10.0, 100.0, 1e3, 1e4}; break;
      case NoiseKind::MotionalDephasing: p["rates"] = {0.1, 1.0, 10.0, 100.0}; break;
      case NoiseKind::StaticShift:
        p["rates"] = {kTwoPi * 100.0, kTwoPi * 300.0, kTwoPi * 1e3, kTwoPi * 3e3};
        break;
    }
  }
  for (const auto& r : p.at("rates")) NoiseChannel{kind, r.get<double>()}.validate();
  const int n_max = p.at("n_max").get<int>();
  if (n_max != 0 && n_max < 2) throw ConfigError("key 'n_max' must be 0 (automatic) or >= 2");
}

void check_drive(json& p) { drive_from(p).validate(); }

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> s;

    auto gate_plus = [](std::vector<Key> extra) {
      auto keys = gate_keys();
      keys.insert(keys.end(), extra.begin(), extra.end());
      return keys;
    };

    s.push_back({"ideal-gate",
                 "Noise-free gate propagation; reports closure infidelity and spin-motion entropy.",
                 gate_plus({{"n_max", Kind::Int, 20, "", "Fock truncation", 2},
                            {"n0", Kind::Int, 0, "", "initial Fock state", 0},
                            initial_spin_key()}),
                 [](json& p, const HzKeys&) {
                   check_gate(p);
                   if (p.at("n0").get<int>() + 2 > p.at("n_max").get<int>()) {
                     throw ConfigError("key 'n0' must stay below n_max - 1");
                   }
                 },
                 run_ideal_gate});

    s.push_back({"noise-sweep",
                 "Analytic vs numeric infidelity for one noise channel over rates, n0 and K.",
                 gate_plus({{"channel", Kind::String, "heating", "", "heating | dephasing | static",
                             -1e300, {"heating", "dephasing", "motional-dephasing", "static",
                                      "static-shift"}},
                            {"rates", Kind::FreqList, nullptr, "1/s (rad/s for static)",
                             "channel rates; default depends on the channel"},
                            {"n0_values", Kind::IntList, json::array({0}), "", "initial Fock states", 0},
                            {"K_values", Kind::IntList, json::array({1}), "", "loop counts", 1},
                            {"n_max", Kind::Int, 0, "", "Fock truncation (0: automatic)", 0},
                            initial_spin_key()}),
                 check_noise, run_noise_sweep});

    s.push_back({"trajectories",
                 "Phase-space trajectories alpha_+-(t) of both spin branches.",
                 gate_plus({{"samples", Kind::Int, 2001, "", "time samples", 3}}),
                 [](json& p, const HzKeys&) { check_gate(p); }, run_trajectories});

    auto ramp_keys = drive_keys();
    ramp_keys.push_back({"t_r_values", Kind::RealList,
                         json::array({2.5e-6, 5e-6, 7.5e-6, 10e-6, 12.5e-6, 15e-6, 17.5e-6, 20e-6}),
                         "s", "ramp times (gate time re-optimized for each)", 0.0});
    ramp_keys.push_back({"trace_t_r", Kind::Real, 10e-6, "s", "ramp time of the P_up trace", 0.0});
    ramp_keys.push_back({"trace_samples", Kind::Int, 401, "", "trace samples (0: no trace)", 0});
    s.push_back({"crosstalk-ramp",
                 "Target and spectator infidelity versus ramp time, plus a P_up time trace.",
                 ramp_keys, [](json& p, const HzKeys&) { check_drive(p); }, run_crosstalk_ramp});

    auto field_keys = drive_keys();
    field_keys.push_back({"t_r", Kind::Real, 15e-6, "s", "ramp time", 0.0});
    field_keys.push_back({"duration", Kind::Real, 0.0, "s", "total gate time (0: optimize)", 0.0});
    field_keys.push_back({"ratios", Kind::RealList, json::array({0.01, 0.1, 0.5, 1.0}), "",
                          "Omega_E,s / Omega_E,target", 0.0});
    field_keys.push_back({"spectator_freqs", Kind::FreqList,
                          json::array({kTwoPi * 6.1e6, kTwoPi * 6.3e6, kTwoPi * 6.35e6,
                                       kTwoPi * 6.4e6}),
                          "rad/s", "spectator motional frequencies", 0.0});
    s.push_back({"crosstalk-field",
                 "Spectator infidelity versus stray E-field ratio and spectator frequency.",
                 field_keys, [](json& p, const HzKeys&) { check_drive(p); }, run_crosstalk_field});

    s.push_back({"multi-ion",
                 "Two-ion COM/stretch echo sequences addressing a single qubit.",
                 {{"omega_p", Kind::Freq, kTwoPi * 2e3, "rad/s", "spin-dependent force", 0.0},
                  {"Delta", Kind::Freq, kTwoPi * 5e4, "rad/s", "mode detuning", 0.0},
                  {"theta", Kind::Real, kPi / 2, "rad", "collective rotation angle", 0.0},
                  {"K", Kind::Int, 2, "", "loops per sequence (even)", 2},
                  {"axis", Kind::Axis, json::array({0.0, 1.0, 0.0}), "", "rotation axis"},
                  {"n_max", Kind::Int, 12, "", "Fock truncation", 2}},
                 [](json& p, const HzKeys&) {
                   if (p.at("K").get<int>() % 2 != 0) throw ConfigError("key 'K' must be even");
                   if (p.at("omega_p").get<double>() <= 0.0 || p.at("Delta").get<double>() <= 0.0 ||
                       p.at("theta").get<double>() <= 0.0) {
                     throw ConfigError("omega_p, Delta and theta must be positive");
                   }
                 },
                 run_multi_ion});

    s.push_back({"micromotion-compare",
                 "Fock-state dependence of the micromotion gate against the main scheme.",
                 gate_plus({{"omega_rsb", Kind::Freq, kTwoPi * 1e3, "rad/s", "red-sideband Rabi frequency", 0.0},
                            {"omega_e", Kind::Freq, kTwoPi * 1e4, "rad/s", "E-field force", 0.0},
                            {"Delta", Kind::Freq, kTwoPi * 5e4, "rad/s", "detuning", 0.0},
                            {"n_loops", Kind::Int, 1, "", "phase-space loops", 1},
                            {"n_values", Kind::IntList, json::array({0, 10}), "", "Fock states compared", 0},
                            {"n_max", Kind::Int, 60, "", "Fock truncation (micromotion)", 2},
                            {"gate_n_max", Kind::Int, 60, "", "Fock truncation (main scheme)", 2}}),
                 [](json& p, const HzKeys&) {
                   check_gate(p);
                   if (p.at("omega_rsb").get<double>() <= 0.0 || p.at("Delta").get<double>() <= 0.0) {
                     throw ConfigError("omega_rsb and Delta must be positive");
                   }
                   for (const auto& n : p.at("n_values")) {
                     if (n.get<int>() + 2 > std::min(p.at("n_max").get<int>(),
                                                     p.at("gate_n_max").get<int>())) {
                       throw ConfigError("n_values must stay below n_max - 1");
                     }
                   }
                 },
                 run_micromotion});
    return s;
  }();
  return all;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenarios()) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& s : scenarios()) known += (known.empty() ? "" : ", ") + s.name;
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

std::string fallback_text(const Key& k) {
  if (k.fallback.is_null()) return "derived";
  return rounded(k.fallback).dump();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& s : scenarios()) out.push_back({s.name, s.summary});
    return out;
  }();
  return catalog;
}

std::string describe_scenarios_markdown() {
  std::ostringstream md;
  md << "Common top-level keys: `scenario` (required), `parameters` (object), "
        "`output_path` (default \"results\"), `seed` (integer, reserved), `workers` "
        "(integer >= 1).\n\nKeys of kind *frequency* are given either in rad/s under their own "
        "name or in Hz with an `_hz` suffix (e.g. `omega_E_hz: 100000`), never both.\n";
  for (const auto& s : scenarios()) {
    md << "\n### " << s.name << "\n\n" << s.summary << "\n\n";
    md << "| key | kind | unit | default | description |\n|---|---|---|---|---|\n";
    for (const auto& k : s.keys) {
      md << "| `" << k.name << "` | " << kind_label(k.kind) << " | " << k.unit << " | `"
         << fallback_text(k) << "` | " << k.doc << " |\n";
    }
  }
  return md.str();
}

ScenarioConfig parse_scenario_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig cfg;
  json params = json::object();
  bool have_scenario = false;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& key = it.key();
    const auto& v = it.value();
    if (key == "scenario") {
      if (!v.is_string()) throw ConfigError("key 'scenario' must be a string");
      cfg.scenario = v.get<std::string>();
      have_scenario = true;
    } else if (key == "parameters") {
      if (!v.is_object()) throw ConfigError("key 'parameters' must be an object");
      params = v;
    } else if (key == "output_path") {
      if (!v.is_string() || v.get<std::string>().empty()) {
        throw ConfigError("key 'output_path' must be a non-empty string");
      }
      cfg.output_path = v.get<std::string>();
    } else if (key == "seed") {
      cfg.seed = int_value(v, key);
    } else if (key == "workers") {
      cfg.workers = int_value(v, key);
      if (cfg.workers < 1) throw ConfigError("key 'workers' must be >= 1");
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  if (!have_scenario) throw ConfigError("missing key 'scenario'");
  const Scenario& sc = find_scenario(cfg.scenario);

  json normalized = json::object();
  HzKeys hz;
  for (auto it = params.begin(); it != params.end(); ++it) {
    std::string name = it.key();
    bool in_hz = false;
    const Key* match = nullptr;
    for (const auto& k : sc.keys) {
      if (k.name == name) {
        match = &k;
      } else if (is_frequency(k.kind) && name == k.name + "_hz") {
        match = &k;
        in_hz = true;
      }
    }
    if (match == nullptr) {
      throw ConfigError("unknown key '" + name + "' for scenario '" + sc.name + "'");
    }
    if (normalized.contains(match->name)) {
      throw ConfigError("key '" + match->name + "' given both in rad/s and in Hz");
    }
    normalized[match->name] = parse_value(*match, it.value(), in_hz);
    if (in_hz) hz.insert(match->name);
  }
  for (const auto& k : sc.keys) {
    if (!normalized.contains(k.name)) normalized[k.name] = k.fallback;
  }
  sc.check(normalized, hz);
  cfg.parameters = normalized;
  return cfg;
}

ScenarioConfig validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_scenario_config(doc);
}

json to_json(const ScenarioConfig& cfg) {
  return {{"scenario", cfg.scenario},
          {"parameters", rounded(cfg.parameters)},
          {"output_path", cfg.output_path},
          {"seed", cfg.seed},
          {"workers", cfg.workers}};
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg) {
  const Scenario& sc = find_scenario(cfg.scenario);
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();

  Artifacts artifacts;
  artifacts.dir = cfg.output_path;
  std::error_code ec;
  std::filesystem::create_directories(artifacts.dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.output_path + ": " + ec.message());

  const json results = rounded(sc.run(cfg, artifacts));
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json manifest = {{"scenario", cfg.scenario},
                   {"version", IONGATE_VERSION},
                   {"parameters", rounded(cfg.parameters)},
                   {"seed", cfg.seed},
                   {"workers", cfg.workers},
                   {"results", results},
                   {"outputs", artifacts.files},
                   {"started_at", started},
                   {"runtime_s", num(runtime)}};
  if (!artifacts.timings.empty()) manifest["timings"] = artifacts.timings;
  artifacts.write("manifest.json", [&](std::ostream& s) { s << manifest.dump(2) << '\n'; });
  return {artifacts.files, results};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const InvariantViolation*>(&e) != nullptr) return 3;
  if (dynamic_cast<const IoError*>(&e) != nullptr) return 4;
  return 1;
}

}  // namespace iongate
