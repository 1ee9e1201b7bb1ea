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
#include "pwlnn/core/error.hpp"
#include "pwlnn/core/region.hpp"
#include "pwlnn/core/sampling.hpp"

namespace pwlnn {

// x was not covered by any region of a conventional model.
class CoverageGap : public Error {
 public:
  explicit CoverageGap(Vector point);
  const Vector& point() const { return point_; }

 private:
  Vector point_;
};

class EmptyRegion : public Error {
 public:
  explicit EmptyRegion(int label);
  int label() const { return label_; }

 private:
  int label_;
};

// Region-by-region PWL function: on region i the value is pieces[i](x).
class ConventionalPWL {
 public:
  ConventionalPWL(std::size_t dimension, std::vector<Region> regions,
                  std::vector<AffineFunction> pieces,
                  std::optional<Region> domain = std::nullopt);

  // Also certifies every region non-empty inside probe_box().
  static ConventionalPWL validated(std::size_t dimension,
                                   std::vector<Region> regions,
                                   std::vector<AffineFunction> pieces,
                                   std::optional<Region> domain = std::nullopt);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return regions_.size(); }
  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<AffineFunction>& pieces() const { return pieces_; }
  const std::optional<Region>& domain() const { return domain_; }

  // Index of the lowest-label region containing x.
  std::optional<std::size_t> locate(const Vector& x) const;

  // Throws CoverageGap when x lies in no region.
  double operator()(const Vector& x) const;

  // Box used for sampling: axis-aligned domain bounds, else +-fallback.
  Box probe_box(double fallback = 10.0) const;

  double max_jacobian_norm() const;

 private:
  std::size_t dimension_;
  std::vector<Region> regions_;
  std::vector<AffineFunction> pieces_;
  std::optional<Region> domain_;
  std::vector<std::size_t> label_order_;
};

}  // namespace pwlnn
