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

#include "pwlnn/core/sampling.hpp"

#include <charconv>
#include <sstream>

#include "pwlnn/core/error.hpp"

namespace pwlnn {

Box::Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  require_dimension(static_cast<std::size_t>(lower.size()),
                    static_cast<std::size_t>(upper.size()), "box bounds");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw InvalidModel("box lower bound exceeds upper bound on axis " +
                         std::to_string(i + 1));
    }
  }
}

Box Box::cube(std::size_t dimension, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(dimension);
  return Box(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

bool Box::contains(const Vector& x, double tolerance) const {
  require_dimension(dimension(), static_cast<std::size_t>(x.size()), "box");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] - tolerance || x[i] > upper[i] + tolerance) return false;
  }
  return true;
}

Box parse_box(const std::string& text, std::size_t dimension) {
  std::vector<std::pair<double, double>> intervals;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) {
      throw InvalidModel("box interval '" + part + "' is not of the form a:b");
    }
    double lo = 0.0;
    double hi = 0.0;
    const std::string a = part.substr(0, colon);
    const std::string b = part.substr(colon + 1);
    auto ra = std::from_chars(a.data(), a.data() + a.size(), lo);
    auto rb = std::from_chars(b.data(), b.data() + b.size(), hi);
    if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() ||
        rb.ec != std::errc() || rb.ptr != b.data() + b.size()) {
      throw InvalidModel("box interval '" + part + "' has a non-numeric bound");
    }
    intervals.emplace_back(lo, hi);
  }
  if (intervals.size() == 1 && dimension > 1) {
    intervals.resize(dimension, intervals.front());
  }
  if (intervals.size() != dimension) {
    throw DimensionMismatch(dimension, intervals.size(), "box specification");
  }
  Vector lower(static_cast<Eigen::Index>(dimension));
  Vector upper(static_cast<Eigen::Index>(dimension));
  for (std::size_t i = 0; i < dimension; ++i) {
    lower[static_cast<Eigen::Index>(i)] = intervals[i].first;
    upper[static_cast<Eigen::Index>(i)] = intervals[i].second;
  }
  return Box(std::move(lower), std::move(upper));
}

double grid_coordinate(double lo, double hi, std::size_t k, std::size_t count) {
  if (count <= 1) return lo + (hi - lo) / 2.0;
  if (k + 1 == count) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

void for_each_grid_point(const Box& box, std::size_t per_axis,
                         const std::function<void(const Vector&)>& visit) {
  const std::size_t n = box.dimension();
  if (per_axis == 0) return;
  std::vector<std::size_t> index(n, 0);
  Vector x(static_cast<Eigen::Index>(n));
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = static_cast<Eigen::Index>(i);
      x[e] = grid_coordinate(box.lower[e], box.upper[e], index[i], per_axis);
    }
    visit(x);
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (++index[axis] < per_axis) break;
      index[axis] = 0;
      if (axis == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<Vector> grid_points(const Box& box, std::size_t per_axis) {
  std::vector<Vector> points;
  for_each_grid_point(box, per_axis, [&](const Vector& x) { points.push_back(x); });
  return points;
}

std::vector<Vector> lattice_rule_points(const Box& box, std::size_t min_count) {
  std::size_t count = 1;
  while (count < min_count) count <<= 1;
  const std::size_t n = box.dimension();
  // Odd generator near count / golden ratio; powers give the per-axis strides.
  std::size_t generator = static_cast<std::size_t>(static_cast<double>(count) * 0.6180339887498949) | 1u;
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t i = 1; i < n; ++i) strides[i] = (strides[i - 1] * generator) % count;
  std::vector<Vector> points;
  points.reserve(count);
  Vector x(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = static_cast<Eigen::Index>(i);
      const double u = static_cast<double>((k * strides[i]) % count) /
                       static_cast<double>(count);
      x[e] = box.lower[e] + (box.upper[e] - box.lower[e]) * u;
    }
    points.push_back(x);
  }
  return points;
}

}  // namespace pwlnn
