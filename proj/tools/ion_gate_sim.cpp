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


// Command-line front end: runs named scenarios from JSON configs.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "iongate/errors.hpp"
#include "iongate/scenarios.hpp"

namespace {

int report(const std::exception& e) {
  std::cerr << "ion-gate-sim: " << e.what() << '\n';
  return iongate::exit_code_for(e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion geometric phase gate simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_path)");
  run->add_option("--workers", workers, "Worker threads (overrides workers)")
      ->check(CLI::PositiveNumber);

  bool markdown = false;
  auto* list = app.add_subcommand("list-scenarios", "List scenarios and their keys");
  list->add_flag("--markdown", markdown, "Print the full key reference as Markdown");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config and print it normalized");
  validate->add_option("config", validate_path, "Scenario config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      if (markdown) {
        std::cout << iongate::describe_scenarios_markdown();
      } else {
        for (const auto& s : iongate::scenario_catalog()) {
          std::cout << s.name << "\t" << s.summary << '\n';
        }
      }
      return 0;
    }
    if (*validate) {
      const auto cfg = iongate::validate_config(validate_path);
      std::cout << iongate::to_json(cfg).dump(2) << '\n';
      return 0;
    }
    auto cfg = iongate::validate_config(config_path);
    if (!out_dir.empty()) cfg.output_path = out_dir;
    if (workers > 0) cfg.workers = workers;
    const auto outcome = iongate::run_scenario(cfg);
    std::cout << outcome.results.dump(2) << '\n';
    for (const auto& f : outcome.files) std::cerr << "wrote " << f << '\n';
    return 0;
  } catch (const std::exception& e) {
    return report(e);
  }
}
