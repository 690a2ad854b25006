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

#include "json.hpp"

namespace iongate {

/// A validated run request. `parameters` holds every scenario key with defaults
/// filled in and all frequencies converted to rad/s (`*_hz` keys lose the suffix).
struct ScenarioConfig {
  std::string scenario;
  nlohmann::json parameters;
  std::string output_path = "results";
  int seed = 0;  // reserved; every scenario is deterministic
  int workers = 1;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
};

const std::vector<ScenarioInfo>& scenario_catalog();

// Markdown table of every scenario's accepted keys, units and defaults.
std::string describe_scenarios_markdown();

// Strict parse of a JSON document. Throws ConfigError naming the first unknown
// key, wrong type or out-of-range value.
ScenarioConfig parse_scenario_config(const nlohmann::json& doc);

// Reads and parses a config file; IoError when it cannot be read, ConfigError
// when it is not valid JSON or fails validation.
ScenarioConfig validate_config(const std::string& path);

// The normalized config as JSON (what `validate` echoes).
nlohmann::json to_json(const ScenarioConfig& cfg);

struct ScenarioOutcome {
  std::vector<std::string> files;  // written artifacts, manifest last
  nlohmann::json results;
};

// Runs the scenario, writes its CSV/JSON artifacts plus manifest.json into
// cfg.output_path. Throws ConfigError (bad parameters), InvariantViolation
// (physics check failed) or IoError (cannot write).
ScenarioOutcome run_scenario(const ScenarioConfig& cfg);

// Exit code for an exception escaping run_scenario / validate_config:
// 2 configuration, 3 invariant violation, 4 I/O, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace iongate
