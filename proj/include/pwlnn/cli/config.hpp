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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pwlnn/core/error.hpp"
#include "pwlnn/dnn/training.hpp"
#include "pwlnn/learning/fit.hpp"

namespace pwlnn {

// Bad flags, bad config values, or an invalid combination of them.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Flat `key = value` lines; `#` starts a comment.
using Settings = std::map<std::string, std::string>;
Settings read_settings(std::istream& in);
Settings load_settings(const std::string& path);

// Every key a settings file or flag may carry, in documentation order.
// Flags spell them with dashes: max_terms becomes --max-terms.
const std::vector<std::string>& setting_keys();

struct FitSettings {
  FitConfig fit;
  TrainConfig train;
  std::vector<std::size_t> layers{16, 16};
  std::string activation = "relu";
};

// Throws UsageError for unknown keys, malformed values and configs that
// fail validation.
FitSettings apply_settings(const Settings& settings);

}  // namespace pwlnn
