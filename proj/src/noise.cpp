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

#include "iongate/noise.hpp"

#include <cmath>

#include "iongate/errors.hpp"

namespace iongate {

const char* noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Heating:
      return "heating";
    case NoiseKind::MotionalDephasing:
      return "dephasing";
    case NoiseKind::StaticShift:
      return "static";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "heating") return NoiseKind::Heating;
  if (name == "dephasing" || name == "motional-dephasing") return NoiseKind::MotionalDephasing;
  if (name == "static" || name == "static-shift") return NoiseKind::StaticShift;
  throw ConfigError("unknown noise channel '" + name + "'");
}

void NoiseChannel::validate() const {
  if (!std::isfinite(rate)) throw ConfigError("noise rate must be finite");
  if (kind != NoiseKind::StaticShift && rate < 0.0) {
    throw ConfigError(std::string(noise_kind_name(kind)) + " rate must be >= 0");
  }
}

std::vector<StructuredOperator> jump_operators(const NoiseChannel& channel, int n_qubits) {
  channel.validate();
  const ComplexOperator id = ComplexOperator::Identity(1 << n_qubits, 1 << n_qubits);
  const double r = std::sqrt(std::abs(channel.rate));
  switch (channel.kind) {
    case NoiseKind::Heating:
      return {{{id, Motion::Lower, r}}, {{id, Motion::Raise, r}}};
    case NoiseKind::MotionalDephasing:
      return {{{id, Motion::Number, r}}};
    case NoiseKind::StaticShift:
      break;
  }
  return {};
}

std::vector<ScheduleTerm> hamiltonian_terms(const NoiseChannel& channel, int n_qubits) {
  channel.validate();
  if (channel.kind != NoiseKind::StaticShift || channel.rate == 0.0) return {};
  const ComplexOperator id = ComplexOperator::Identity(1 << n_qubits, 1 << n_qubits);
  return {{id, Motion::Number, channel.rate, 0.0, {}, false}};
}

HamiltonianSchedule with_noise(HamiltonianSchedule h, const NoiseChannel& channel) {
  for (auto& term : hamiltonian_terms(channel, h.n_qubits)) h.terms.push_back(std::move(term));
  return h;
}

}  // namespace iongate
