// Copyright 2026 The pwlnn Authors
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

#include "pwlnn/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "pwlnn/dnn/activation.hpp"

namespace pwlnn {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw UsageError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw UsageError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

std::vector<std::size_t> to_layers(const std::string& key, const std::string& value) {
  std::vector<std::size_t> layers;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const std::string part = value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto units = to_unsigned(key, part);
    if (units == 0) throw UsageError(key + ": every layer needs at least one unit");
    layers.push_back(units);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return layers;
}

}  // namespace

Settings read_settings(std::istream& in) {
  Settings settings;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, 1, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(number, 1, "missing key before '='");
    if (value.empty()) throw ParseError(number, eq + 2, "missing value for '" + key + "'");
    settings[key] = value;
  }
  return settings;
}

Settings load_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file '" + path + "'");
  return read_settings(in);
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "seed",       "max_terms",     "max_iterations", "tolerance", "ridge",
      "validation_fraction", "restarts", "backfit_sweeps", "learning_rate", "batch_size",
      "epochs",     "loss",          "init",           "layers",    "activation"};
  return keys;
}

FitSettings apply_settings(const Settings& settings) {
  FitSettings s;
  for (const auto& [key, value] : settings) {
    if (key == "seed") {
      s.fit.seed = to_unsigned(key, value);
      s.train.seed = s.fit.seed;
    } else if (key == "max_terms") {
      s.fit.max_terms = to_unsigned(key, value);
    } else if (key == "max_iterations") {
      s.fit.max_iterations = to_unsigned(key, value);
    } else if (key == "tolerance") {
      s.fit.tolerance = to_double(key, value);
    } else if (key == "ridge") {
      s.fit.ridge = to_double(key, value);
    } else if (key == "validation_fraction") {
      s.fit.validation_fraction = to_double(key, value);
    } else if (key == "restarts") {
      s.fit.restarts = to_unsigned(key, value);
    } else if (key == "backfit_sweeps") {
      s.fit.backfit_sweeps = to_unsigned(key, value);
    } else if (key == "learning_rate") {
      s.train.learning_rate = to_double(key, value);
    } else if (key == "batch_size") {
      s.train.batch_size = to_unsigned(key, value);
    } else if (key == "epochs") {
      s.train.epochs = to_unsigned(key, value);
    } else if (key == "loss") {
      s.train.loss = value;
    } else if (key == "init") {
      try {
        s.train.init = parse_init_scheme(value);
      } catch (const Error& e) {
        throw UsageError(std::string("init: ") + e.what());
      }
    } else if (key == "layers") {
      s.layers = to_layers(key, value);
    } else if (key == "activation") {
      try {
        Activation::parse(value);
      } catch (const Error& e) {
        throw UsageError(std::string("activation: ") + e.what());
      }
      s.activation = value;
    } else {
      throw UsageError("unknown setting '" + key + "'");
    }
  }
  try {
    s.fit.validate();
    s.train.validate();
  } catch (const InvalidModel& e) {
    throw UsageError(e.what());
  }
  return s;
}

}  // namespace pwlnn
