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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pwlnn/core/affine.hpp"

namespace pwlnn {

// N samples (rows of `inputs`) with scalar targets.
class Dataset {
 public:
  Dataset(Matrix inputs, Vector targets, std::vector<std::string> names = {});

  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(inputs_.cols()); }
  const Matrix& inputs() const { return inputs_; }
  const Vector& targets() const { return targets_; }
  const std::vector<std::string>& names() const { return names_; }
  Vector point(std::size_t i) const { return inputs_.row(static_cast<Eigen::Index>(i)).transpose(); }

  Dataset subset(const std::vector<std::size_t>& rows) const;

 private:
  Matrix inputs_;
  Vector targets_;
  std::vector<std::string> names_;
};

// Comma-separated numbers. With `header` unset, a first row that does not
// parse as numbers is taken as the header.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;
};
CsvTable read_csv(std::istream& in, std::optional<bool> header = std::nullopt);

// Last column is the target.
Dataset read_dataset(std::istream& in, std::optional<bool> header = std::nullopt);
Dataset load_dataset(const std::string& path, std::optional<bool> header = std::nullopt);
void write_dataset(std::ostream& out, const Dataset& data);

// Samples `f` on a grid with `per_axis` points per axis over [lo, hi]^n.
template <class F>
Dataset grid_dataset(std::size_t n, double lo, double hi, std::size_t per_axis, F&& f);

}  // namespace pwlnn

#include "pwlnn/core/sampling.hpp"

namespace pwlnn {

template <class F>
Dataset grid_dataset(std::size_t n, double lo, double hi, std::size_t per_axis, F&& f) {
  const auto points = grid_points(Box::cube(n, lo, hi), per_axis);
  Matrix x(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(n));
  Vector y(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    y[static_cast<Eigen::Index>(i)] = f(points[i]);
  }
  return Dataset(std::move(x), std::move(y));
}

}  // namespace pwlnn
