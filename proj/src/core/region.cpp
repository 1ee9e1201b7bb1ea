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

#include "pwlnn/core/region.hpp"

#include <algorithm>
#include <limits>

#include "pwlnn/core/error.hpp"

namespace pwlnn {

Region::Region(std::vector<Halfspace> halfspaces, int label)
    : halfspaces_(std::move(halfspaces)), label_(label) {
  if (!halfspaces_.empty()) {
    const std::size_t n = halfspaces_.front().dimension();
    for (const auto& h : halfspaces_) {
      require_dimension(n, h.dimension(), "region halfspace");
    }
  }
}

bool Region::contains(const Vector& x, double tolerance) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const Halfspace& h) { return h.contains(x, tolerance); });
}

bool Region::closure_contains(const Vector& x, double tolerance) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const Halfspace& h) { return h.slack(x) >= -tolerance * h.normal.norm(); });
}

double Region::depth(const Vector& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) d = std::min(d, h.slack(x) / h.normal.norm());
  return d;
}

Box Region::bounding_box(const Box& outer) const {
  Box box = outer;
  for (const auto& h : halfspaces_) {
    Eigen::Index axis = -1;
    int nonzero = 0;
    for (Eigen::Index i = 0; i < h.normal.size(); ++i) {
      if (h.normal[i] != 0.0) {
        axis = i;
        ++nonzero;
      }
    }
    if (nonzero != 1) continue;
    const double bound = h.offset / h.normal[axis];
    if (h.normal[axis] > 0.0) {
      box.lower[axis] = std::max(box.lower[axis], bound);
    } else {
      box.upper[axis] = std::min(box.upper[axis], bound);
    }
  }
  for (Eigen::Index i = 0; i < box.lower.size(); ++i) {
    if (box.lower[i] > box.upper[i]) box.lower[i] = box.upper[i];
  }
  return box;
}

std::optional<Vector> Region::find_interior_point(const Box& outer,
                                                  std::size_t samples) const {
  const Box box = bounding_box(outer);
  std::optional<Vector> best;
  double best_depth = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Vector& x) {
    if (!contains(x)) return;
    const double d = depth(x);
    if (!best || d > best_depth) {
      best = x;
      best_depth = d;
    }
  };
  consider((box.lower + box.upper) / 2.0);
  for (const auto& x : lattice_rule_points(box, samples)) consider(x);
  return best;
}

}  // namespace pwlnn
