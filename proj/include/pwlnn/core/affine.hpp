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

#include <Eigen/Dense>
#include <cstddef>

namespace pwlnn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dot product accumulated left to right. Used by every evaluator.
double ordered_dot(const Vector& a, const Vector& b);

// x -> jacobian . x + bias
class AffineFunction {
 public:
  AffineFunction() = default;
  AffineFunction(Vector jacobian, double bias);

  static AffineFunction zero(std::size_t dimension);
  // x -> x_axis + bias
  static AffineFunction coordinate(std::size_t dimension, std::size_t axis,
                                   double scale = 1.0, double bias = 0.0);
  static AffineFunction constant(std::size_t dimension, double value);

  std::size_t dimension() const { return static_cast<std::size_t>(jacobian_.size()); }
  const Vector& jacobian() const { return jacobian_; }
  double bias() const { return bias_; }

  // Throws DimensionMismatch naming both sizes.
  double operator()(const Vector& x) const;

  AffineFunction operator+(const AffineFunction& other) const;
  AffineFunction operator-() const;
  AffineFunction operator*(double scale) const;

  bool operator==(const AffineFunction& other) const;
  // Lexicographic on (bias, jacobian); used for canonical set ordering.
  bool operator<(const AffineFunction& other) const;

 private:
  Vector jacobian_;
  double bias_ = 0.0;
};

// normal . x >= offset (closed) or normal . x > offset (open).
struct Halfspace {
  Vector normal;
  double offset = 0.0;
  bool closed = true;

  Halfspace() = default;
  Halfspace(Vector normal, double offset, bool closed);

  std::size_t dimension() const { return static_cast<std::size_t>(normal.size()); }
  // normal . x - offset
  double slack(const Vector& x) const;
  bool contains(const Vector& x, double tolerance) const;
};

}  // namespace pwlnn
