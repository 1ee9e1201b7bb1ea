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
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pwlnn {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitFit = 3,
  kExitNotRepresentable = 4,
  kExitViolations = 5,
  kExitBudget = 6,
  kExitUsage = 64,
};

// Runs one command line (without the program name). Summaries go to `out`
// as `key: value` lines, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

// "a:b:step[,a:b:step...]"; one axis spec is broadcast. Points are in
// lexicographic index order, axis 0 slowest.
std::vector<Eigen::VectorXd> parse_grid(const std::string& spec, std::size_t dimension);

}  // namespace pwlnn
