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
#include <functional>
#include <string>

#include "pwlnn/core/sampling.hpp"

namespace pwlnn {

using Evaluator = std::function<double(const Vector&)>;

inline constexpr double kEquivalenceTolerance = 1e-9;

struct EquivalenceReport {
  double max_deviation = 0.0;
  Vector argmax;
  std::size_t samples = 0;
  double tolerance = kEquivalenceTolerance;
  bool equivalent = true;
};

// Grid sweep with `grid_density` points per axis, then `extra_samples`
// rank-1 lattice points (rounded up to a power of two). Deviations are
// absolute; a NaN deviation counts as infinite.
EquivalenceReport check_equivalence(const Evaluator& a, const Evaluator& b, const Box& box,
                                    std::size_t grid_density,
                                    double tolerance = kEquivalenceTolerance,
                                    std::size_t extra_samples = 1024);

// Fixed-field block of `key: value` lines.
std::string format_report(const EquivalenceReport& report);

}  // namespace pwlnn
