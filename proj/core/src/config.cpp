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

#include "timeop/config.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace timeop {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& value, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + value + "' is not an integer");
  }
}

double parse_double(const std::string& value, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + value + "' is not a number");
  }
}

std::vector<int> parse_levels(const std::string& value,
                              const std::string& where) {
  std::vector<int> out;
  std::istringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const std::string token = trim(item);
    if (token.empty()) {
      throw ConfigError(where + ": empty entry in level list '" + value + "'");
    }
    out.push_back(parse_int(token, where));
  }
  if (out.empty()) {
    throw ConfigError(where + ": empty level list");
  }
  return out;
}

void assign_key(RunConfig& config, const std::string& key,
                const std::string& value, const std::string& where) {
  if (key == "scenario") {
    config.scenario = value;
  } else if (key == "hbar") {
    config.hbar = parse_double(value, where);
  } else if (key == "space_dim") {
    config.space_dim = parse_int(value, where);
  } else if (key == "clock_points") {
    config.clock_points = parse_int(value, where);
  } else if (key == "clock_dt") {
    config.clock_dt = parse_double(value, where);
  } else if (key == "levels") {
    config.levels = parse_levels(value, where);
  } else if (key == "coeffs") {
    config.coeffs = value;
  } else if (key == "grid_base") {
    config.grid_base = parse_int(value, where);
  } else if (key == "output_path") {
    config.output_path = value;
  } else if (key == "format") {
    if (value != "json" && value != "csv") {
      throw ConfigError(where + ": format must be 'json' or 'csv', got '" +
                        value + "'");
    }
    config.format = value;
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

void assign_line(RunConfig& config, const std::string& line,
                 const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) {
    throw ConfigError(where + ": missing key before '='");
  }
  if (value.empty()) {
    throw ConfigError(where + ": missing value for key '" + key + "'");
  }
  assign_key(config, key, value, where);
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& path) {
  RunConfig config;
  std::istringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string line = trim(raw);
    if (line.empty()) {
      continue;
    }
    assign_line(config, line, path + ":" + std::to_string(lineno));
  }
  if (config.scenario.empty()) {
    throw ConfigError(path + ": the 'scenario' key is required");
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read configuration file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  assign_line(config, trim(assignment), "--set " + assignment);
}

}  // namespace timeop
