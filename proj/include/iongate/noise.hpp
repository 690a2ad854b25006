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

#include <string>
#include <vector>

#include "iongate/gatemodel.hpp"
#include "iongate/qops.hpp"

namespace iongate {

enum class NoiseKind { Heating, MotionalDephasing, StaticShift };

const char* noise_kind_name(NoiseKind kind);
// Accepts "heating", "dephasing" / "motional-dephasing", "static" / "static-shift".
NoiseKind parse_noise_kind(const std::string& name);

/// A motional decoherence source. rate is ndot (quanta/s) for heating,
/// eta (1/s) for dephasing, g_d (rad/s, signed) for a static frequency shift.
struct NoiseChannel {
  NoiseKind kind = NoiseKind::Heating;
  double rate = 0.0;

  static NoiseChannel heating(double ndot) { return {NoiseKind::Heating, ndot}; }
  static NoiseChannel dephasing(double eta) { return {NoiseKind::MotionalDephasing, eta}; }
  static NoiseChannel static_shift(double g_d) { return {NoiseKind::StaticShift, g_d}; }

  bool is_dissipative() const { return kind != NoiseKind::StaticShift; }

  // Throws ConfigError for negative heating/dephasing rates or non-finite values.
  void validate() const;
};

// Lindblad operators on an n_qubits register: {sqrt(ndot) a, sqrt(ndot) a^dag} for
// heating (d<n>/dt = ndot), {sqrt(eta) a^dag a} for dephasing (neighbouring Fock
// coherences decay at eta/2, i.e. tau = 2/eta), none for a static shift.
std::vector<StructuredOperator> jump_operators(const NoiseChannel& channel, int n_qubits = 1);

// g_d a^dag a for a static shift; an empty term list otherwise.
std::vector<ScheduleTerm> hamiltonian_terms(const NoiseChannel& channel, int n_qubits = 1);

// Copy of `h` with the channel's Hamiltonian part appended.
HamiltonianSchedule with_noise(HamiltonianSchedule h, const NoiseChannel& channel);

}  // namespace iongate
