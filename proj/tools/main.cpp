// Copyright 2026 The timeop Authors
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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "timeop/config.hpp"
#include "timeop/errors.hpp"
#include "timeop/scenario.hpp"
#include "timeop/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"timeop: finite clock-space dynamics scenarios"};
  app.set_version_flag("--version", std::string(timeop::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "Run a scenario described by a "
                                            "configuration file");
  run->add_option("--config", config_path, "Path to a key=value configuration")
      ->required();
  run->add_option("--set", overrides,
                  "Override one configuration key, as key=value (repeatable)");
  CLI::App* scenarios =
      app.add_subcommand("scenarios", "List the registered scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scenarios->parsed()) {
      for (const timeop::ScenarioInfo& info : timeop::list_scenarios()) {
        std::cout << info.name << "  -  " << info.summary << "\n";
      }
      return 0;
    }
    timeop::RunConfig config = timeop::parse_config_file(config_path);
    for (const std::string& assignment : overrides) {
      timeop::apply_override(config, assignment);
    }
    const timeop::ScenarioReport report = timeop::run_scenario(config);
    for (const std::string& path : timeop::write_report(report, config)) {
      std::cout << "wrote " << path << "\n";
    }
    return 0;
  } catch (const timeop::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const timeop::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
