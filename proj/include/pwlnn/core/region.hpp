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

#include "pwlnn/core/affine.hpp"
#include "pwlnn/core/sampling.hpp"

namespace pwlnn {

// Feasibility tolerance used for closed-halfspace membership and emptiness.
inline constexpr double kFeasibilityTolerance = 1e-9;

// Convex polyhedron given as an intersection of halfspaces.
class Region {
 public:
  Region() = default;
  Region(std::vector<Halfspace> halfspaces, int label);

  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  int label() const { return label_; }

  bool contains(const Vector& x, double tolerance = kFeasibilityTolerance) const;
  // Membership in the topological closure, open halfspaces treated as closed.
  bool closure_contains(const Vector& x, double tolerance = kFeasibilityTolerance) const;
  // Smallest normalized slack over all halfspaces; +inf for the empty list.
  double depth(const Vector& x) const;

  // Axis-aligned halfspaces clipped into `outer`.
  Box bounding_box(const Box& outer) const;

  // Deepest point among lattice samples of the clipped bounding box, or
  // nullopt when no sample lies inside.
  std::optional<Vector> find_interior_point(const Box& outer,
                                            std::size_t samples = 4096) const;

 private:
  std::vector<Halfspace> halfspaces_;
  int label_ = 0;
};

}  // namespace pwlnn
