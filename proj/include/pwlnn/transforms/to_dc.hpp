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

#include "pwlnn/repr/models.hpp"
#include "pwlnn/transforms/dc_form.hpp"

namespace pwlnn {

// DC decompositions built by folding the DC algebra over each model's
// defining expression.
DcForm to_dc(const CplrModel& model);
DcForm to_dc(const NestedCplrModel& model);
DcForm to_dc(const HingeModel& model);
DcForm to_dc(const GhhModel& model);
DcForm to_dc(const HlCplrModel& model);
DcForm to_dc(const AhhModel& model);
DcForm to_dc(const SbfModel& model);
DcForm to_dc(const LatticeModel& model);

}  // namespace pwlnn
