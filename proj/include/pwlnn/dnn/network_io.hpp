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

#include "pwlnn/dnn/network.hpp"

namespace pwlnn {

// pwl-net v1 inputs=<n> outputs=<m> layers=<K>
// layer units=<u> activation=<descriptor>
// row w=<weights> b=<bias>        one per pre-activation
// param p=<values>                one per unit, parameterized kinds only
// output
// row w=<weights> b=<bias>        one per output
void write_network(std::ostream& out, const Network& net);
Network read_network(std::istream& in);

}  // namespace pwlnn
