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

#include <optional>
#include <string>
#include <vector>

#include "timeop/errors.hpp"

namespace timeop {

/// Settings for one scenario run. Optional fields fall back to the
/// scenario's documented defaults; each scenario resolves and reports the
/// values it actually used.
struct RunConfig {
  std::string scenario;
  std::optional<double> hbar;
  std::optional<int> space_dim;
  std::optional<int> clock_points;
  std::optional<double> clock_dt;
  std::optional<std::vector<int>> levels;
  std::optional<std::string> coeffs;
  std::optional<int> grid_base;
  std::string output_path = "report.json";
  std::string format = "json";
};

/// Parses a plain-text configuration: one "key = value" pair per line,
/// '#' starts a comment, blank lines are skipped. Recognized keys are
/// scenario, hbar, space_dim, clock_points, clock_dt, levels (comma
/// separated integers), coeffs, grid_base, output_path, format. Any other
/// key, a malformed line, an unreadable file, or an unparsable value throws
/// ConfigError with the line number.
RunConfig parse_config_file(const std::string& path);

/// Parses configuration text directly; path is only used in messages.
RunConfig parse_config_text(const std::string& text, const std::string& path);

/// Applies one "key=value" command-line override on top of a parsed
/// configuration. Same key set and strictness as the file parser.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace timeop
