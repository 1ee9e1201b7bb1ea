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

#include "pwlnn/learning/least_squares.hpp"

#include <cmath>

#include "pwlnn/core/error.hpp"

namespace pwlnn {

Vector least_squares(const Matrix& x, const Vector& y, double ridge) {
  require_dimension(static_cast<std::size_t>(x.rows()), static_cast<std::size_t>(y.size()),
                    "least squares targets");
  if (!(ridge >= 0.0)) throw InvalidModel("ridge must be non-negative");
  const Eigen::Index p = x.cols();
  if (p == 0) return Vector(0);
  if (ridge == 0.0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(x);
    if (qr.rank() < p) {
      throw SingularSystem("least squares design has rank " + std::to_string(qr.rank()) + " < " +
                           std::to_string(p) + " columns; use a positive ridge");
    }
    return qr.solve(y);
  }
  Matrix stacked(x.rows() + p, p);
  stacked.topRows(x.rows()) = x;
  stacked.bottomRows(p) = std::sqrt(ridge) * Matrix::Identity(p, p);
  Vector rhs = Vector::Zero(x.rows() + p);
  rhs.head(x.rows()) = y;
  return Eigen::ColPivHouseholderQR<Matrix>(stacked).solve(rhs);
}

double sum_squared_error(const Matrix& x, const Vector& theta, const Vector& y) {
  return (x * theta - y).squaredNorm();
}

}  // namespace pwlnn
