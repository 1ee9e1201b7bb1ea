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

#include <vector>

#include "pwlnn/learning/fit.hpp"
#include "pwlnn/repr/models.hpp"

namespace pwlnn {

struct SbfFit {
  SbfModel model;
  FitTrace trace;
};

// Shape values tried per coordinate: 2^-3, 2^-2, ..., 2^3.
std::vector<double> sbf_gamma_grid();

// Each round centers a new basis at the sample with the largest absolute
// residual, tunes gamma by two coordinate-descent sweeps over the grid, and
// refits all weights. Stops early once the residual vanishes.
SbfFit fit_sbf(const Dataset& data, const FitConfig& config);

}  // namespace pwlnn
