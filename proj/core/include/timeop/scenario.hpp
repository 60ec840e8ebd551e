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

#pragma once

#include <string>
#include <vector>

#include "timeop/config.hpp"

namespace timeop {

/// Name and one-line summary of a registered scenario.
struct ScenarioInfo {
  std::string name;
  std::string summary;
};

/// A table of values a scenario may emit alongside its report when CSV
/// output is requested.
struct CsvTable {
  std::string name;    ///< Suffix for the output file name.
  std::string header;  ///< Comma-separated column names.
  std::vector<std::string> rows;
};

/// Everything a scenario run produces, assembled in memory before anything
/// touches the filesystem.
struct ScenarioReport {
  std::string json_text;        ///< Complete report document, UTF-8.
  std::vector<CsvTable> tables;
};

/// Registered scenarios in registration order.
std::vector<ScenarioInfo> list_scenarios();

/// Runs the scenario named by the configuration and returns its report.
/// Throws ConfigError for an unknown scenario name; domain errors from the
/// underlying computations propagate unchanged. Identical configurations
/// produce byte-identical reports.
ScenarioReport run_scenario(const RunConfig& config);

/// Writes the report to the configured output path (and, when format is
/// "csv", each table to "<stem>-<table name>.csv" beside it). Returns the list
/// of paths written. Throws Error when a file cannot be opened.
std::vector<std::string> write_report(const ScenarioReport& report,
                                      const RunConfig& config);

}  // namespace timeop
