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
#include <variant>

#include "pwlnn/core/conventional.hpp"
#include "pwlnn/repr/models.hpp"
#include "pwlnn/transforms/dc_form.hpp"

namespace pwlnn {

using AnyModel = std::variant<ConventionalPWL, CplrModel, NestedCplrModel, HingeModel, GhhModel,
                              HlCplrModel, AhhModel, SbfModel, LatticeModel, DcForm>;

// File kind tag: conventional, cplr, nested-cplr, hh, ghh, hlcplr, ahh, sbf,
// lattice or dc.
std::string kind_of(const AnyModel& model);
bool is_model_kind(const std::string& kind);

// Dispatches on the header line.
AnyModel read_any_model(std::istream& in);
AnyModel read_any_model_text(const std::string& text);
void write_any_model(std::ostream& out, const AnyModel& model);
std::string any_model_text(const AnyModel& model);

std::size_t dimension_of(const AnyModel& model);
double evaluate(const AnyModel& model, const Vector& x);

// Conventional models go through lattice_from_conventional first.
DcForm to_dc(const AnyModel& model);

}  // namespace pwlnn
