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
#include <optional>
#include <vector>

#include "pwlnn/core/error.hpp"
#include "pwlnn/learning/fit.hpp"
#include "pwlnn/repr/models.hpp"

namespace pwlnn {

class DegenerateSplit : public Error {
 public:
  using Error::Error;
};

// max{alpha_plus . [x, 1], alpha_minus . [x, 1]}; both vectors hold n + 1
// entries with the bias last.
struct HingeFit {
  Vector alpha_plus;
  Vector alpha_minus;
  // Membership of each sample in S+ at the final iteration.
  std::vector<bool> positive;
  std::size_t iterations = 0;
  bool converged = false;
  double sse = 0.0;

  double operator()(const Vector& x) const;
  // alpha_plus - alpha_minus
  Vector direction() const { return alpha_plus - alpha_minus; }
};

// Alternates membership S+ = {x : [x, 1] . (alpha_plus - alpha_minus) > 0}
// with per-side least squares. Without `initial_direction` the runs start
// from the sign split of a global affine fit's residual, from splits at the
// 10%..90% quantiles of each coordinate, and from `restarts` seeded random
// projections split at a random quantile; the lowest-SSE run wins. Throws
// DegenerateSplit when every start leaves a side with fewer than n + 1
// samples.
HingeFit find_hinge(const Matrix& x, const Vector& y, const FitConfig& config,
                    std::optional<Vector> initial_direction = std::nullopt);

struct HhFit {
  HingeModel model;
  FitTrace trace;
};

// Incremental hinging-hyperplane regression with joint weight refits and
// backfitting sweeps over existing hinges.
HhFit fit_hh(const Dataset& data, const FitConfig& config);

}  // namespace pwlnn
