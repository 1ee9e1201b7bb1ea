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

#include "pwlnn/core/affine.hpp"

#include <algorithm>

#include "pwlnn/core/error.hpp"

namespace pwlnn {

double ordered_dot(const Vector& a, const Vector& b) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

AffineFunction::AffineFunction(Vector jacobian, double bias)
    : jacobian_(std::move(jacobian)), bias_(bias) {}

AffineFunction AffineFunction::zero(std::size_t dimension) {
  return AffineFunction(Vector::Zero(static_cast<Eigen::Index>(dimension)), 0.0);
}

AffineFunction AffineFunction::coordinate(std::size_t dimension,
                                          std::size_t axis, double scale,
                                          double bias) {
  if (axis >= dimension) {
    throw InvalidModel("coordinate axis " + std::to_string(axis) +
                       " out of range for dimension " +
                       std::to_string(dimension));
  }
  Vector j = Vector::Zero(static_cast<Eigen::Index>(dimension));
  j[static_cast<Eigen::Index>(axis)] = scale;
  return AffineFunction(std::move(j), bias);
}

AffineFunction AffineFunction::constant(std::size_t dimension, double value) {
  return AffineFunction(Vector::Zero(static_cast<Eigen::Index>(dimension)),
                        value);
}

double AffineFunction::operator()(const Vector& x) const {
  require_dimension(dimension(), static_cast<std::size_t>(x.size()),
                    "affine evaluation");
  return ordered_dot(jacobian_, x) + bias_;
}

AffineFunction AffineFunction::operator+(const AffineFunction& other) const {
  require_dimension(dimension(), other.dimension(), "affine sum");
  return AffineFunction(jacobian_ + other.jacobian_, bias_ + other.bias_);
}

AffineFunction AffineFunction::operator-() const {
  return AffineFunction(-jacobian_, -bias_);
}

AffineFunction AffineFunction::operator*(double scale) const {
  return AffineFunction(jacobian_ * scale, bias_ * scale);
}

bool AffineFunction::operator==(const AffineFunction& other) const {
  return bias_ == other.bias_ && jacobian_.size() == other.jacobian_.size() &&
         (jacobian_.array() == other.jacobian_.array()).all();
}

bool AffineFunction::operator<(const AffineFunction& other) const {
  if (bias_ != other.bias_) return bias_ < other.bias_;
  return std::lexicographical_compare(
      jacobian_.data(), jacobian_.data() + jacobian_.size(),
      other.jacobian_.data(), other.jacobian_.data() + other.jacobian_.size());
}

Halfspace::Halfspace(Vector n, double off, bool is_closed)
    : normal(std::move(n)), offset(off), closed(is_closed) {
  if (normal.size() == 0 || normal.isZero(0.0)) {
    throw InvalidModel("halfspace normal must be a non-zero vector");
  }
}

double Halfspace::slack(const Vector& x) const {
  require_dimension(dimension(), static_cast<std::size_t>(x.size()),
                    "halfspace test");
  return ordered_dot(normal, x) - offset;
}

bool Halfspace::contains(const Vector& x, double tolerance) const {
  const double s = slack(x);
  if (closed) return s >= -tolerance * normal.norm();
  return s > 0.0;
}

}  // namespace pwlnn
