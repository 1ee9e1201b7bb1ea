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

#include "pwlnn/repr/models.hpp"

namespace pwlnn {

// One text format per representation. Every file starts with
// `pwl-<kind> v1 dim=<n> ...`; indices in files are 1-based. The grammar is
// in docs/formats.md.
void write_model(std::ostream& out, const CplrModel& model);
void write_model(std::ostream& out, const NestedCplrModel& model);
void write_model(std::ostream& out, const HingeModel& model);
void write_model(std::ostream& out, const GhhModel& model);
void write_model(std::ostream& out, const HlCplrModel& model);
void write_model(std::ostream& out, const AhhModel& model);
void write_model(std::ostream& out, const SbfModel& model);
void write_model(std::ostream& out, const LatticeModel& model);

CplrModel read_cplr(std::istream& in);
NestedCplrModel read_nested_cplr(std::istream& in);
HingeModel read_hinge(std::istream& in);
GhhModel read_ghh(std::istream& in);
HlCplrModel read_hlcplr(std::istream& in);
AhhModel read_ahh(std::istream& in);
SbfModel read_sbf(std::istream& in);
LatticeModel read_lattice(std::istream& in);

}  // namespace pwlnn
