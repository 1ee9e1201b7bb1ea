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

#include <iosfwd>
#include <string>

#include "pwlnn/core/conventional.hpp"

namespace pwlnn {

// Text format:
//   pwl-conventional v1 dim=<n> pieces=<d>
//   D: normal=<csv> offset=<val> closed=<0|1>      (optional domain, repeated)
//   J=<csv> b=<val>                                (starts piece i)
//   H: normal=<csv> offset=<val> closed=<0|1>      (halfspaces of region i)
void write_conventional(std::ostream& out, const ConventionalPWL& model);
ConventionalPWL read_conventional(std::istream& in);

std::string to_text(const ConventionalPWL& model);

}  // namespace pwlnn
