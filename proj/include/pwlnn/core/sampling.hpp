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
#include <vector>

#include "pwlnn/core/affine.hpp"

namespace pwlnn {

// Axis-aligned box [lower, upper].
struct Box {
  Vector lower;
  Vector upper;

  Box() = default;
  Box(Vector lower, Vector upper);
  static Box cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const { return static_cast<std::size_t>(lower.size()); }
  double diameter() const { return (upper - lower).norm(); }
  bool contains(const Vector& x, double tolerance = 0.0) const;
};

// Parses "a:b[,a:b...]"; a single interval is broadcast when dimension > 1.
Box parse_box(const std::string& text, std::size_t dimension);

// Grid coordinate k of `count` evenly spaced values on [lo, hi].
double grid_coordinate(double lo, double hi, std::size_t k, std::size_t count);

// Visits per_axis^n grid points in lexicographic index order (axis 0 slowest).
void for_each_grid_point(const Box& box, std::size_t per_axis,
                         const std::function<void(const Vector&)>& visit);

std::vector<Vector> grid_points(const Box& box, std::size_t per_axis);

// Rank-1 lattice rule with a power-of-two point count. Every coordinate is a
// dyadic fraction of the box, so points on dyadic boxes are exact doubles.
std::vector<Vector> lattice_rule_points(const Box& box, std::size_t min_count);

}  // namespace pwlnn
