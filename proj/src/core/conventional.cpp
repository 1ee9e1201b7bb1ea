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

#include "pwlnn/core/conventional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace pwlnn {

namespace {

std::string describe_point(const Vector& x) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

}  // namespace

CoverageGap::CoverageGap(Vector point)
    : Error("point " + describe_point(point) + " is not covered by any region"),
      point_(std::move(point)) {}

EmptyRegion::EmptyRegion(int label)
    : Error("region " + std::to_string(label) +
            " has no feasible point inside the probe box"),
      label_(label) {}

ConventionalPWL::ConventionalPWL(std::size_t dimension,
                                 std::vector<Region> regions,
                                 std::vector<AffineFunction> pieces,
                                 std::optional<Region> domain)
    : dimension_(dimension),
      regions_(std::move(regions)),
      pieces_(std::move(pieces)),
      domain_(std::move(domain)) {
  if (regions_.empty()) throw InvalidModel("conventional model needs at least one region");
  if (regions_.size() != pieces_.size()) {
    throw InvalidModel("conventional model has " + std::to_string(regions_.size()) +
                       " regions but " + std::to_string(pieces_.size()) + " pieces");
  }
  for (const auto& p : pieces_) require_dimension(dimension_, p.dimension(), "piece");
  for (const auto& r : regions_) {
    for (const auto& h : r.halfspaces()) {
      require_dimension(dimension_, h.dimension(), "region halfspace");
    }
  }
  if (domain_) {
    for (const auto& h : domain_->halfspaces()) {
      require_dimension(dimension_, h.dimension(), "domain halfspace");
    }
  }
  label_order_.resize(regions_.size());
  std::iota(label_order_.begin(), label_order_.end(), std::size_t{0});
  std::stable_sort(label_order_.begin(), label_order_.end(),
                   [&](std::size_t a, std::size_t b) {
                     return regions_[a].label() < regions_[b].label();
                   });
}

ConventionalPWL ConventionalPWL::validated(std::size_t dimension,
                                           std::vector<Region> regions,
                                           std::vector<AffineFunction> pieces,
                                           std::optional<Region> domain) {
  ConventionalPWL model(dimension, std::move(regions), std::move(pieces),
                        std::move(domain));
  const Box box = model.probe_box();
  for (const auto& r : model.regions_) {
    if (!r.find_interior_point(box)) throw EmptyRegion(r.label());
  }
  return model;
}

std::optional<std::size_t> ConventionalPWL::locate(const Vector& x) const {
  require_dimension(dimension_, static_cast<std::size_t>(x.size()),
                    "conventional evaluation");
  if (domain_ && !domain_->contains(x)) return std::nullopt;
  for (std::size_t i : label_order_) {
    if (regions_[i].contains(x)) return i;
  }
  return std::nullopt;
}

double ConventionalPWL::operator()(const Vector& x) const {
  const auto i = locate(x);
  if (!i) throw CoverageGap(x);
  return pieces_[*i](x);
}

Box ConventionalPWL::probe_box(double fallback) const {
  Box outer = Box::cube(dimension_, -fallback, fallback);
  if (!domain_) return outer;
  const auto n = static_cast<Eigen::Index>(dimension_);
  Vector lower = Vector::Constant(n, -std::numeric_limits<double>::infinity());
  Vector upper = Vector::Constant(n, std::numeric_limits<double>::infinity());
  Box open(lower, upper);
  Box bounded = domain_->bounding_box(open);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::isinf(bounded.lower[i])) bounded.lower[i] = std::min(-fallback, bounded.upper[i] - 2 * fallback);
    if (std::isinf(bounded.upper[i])) bounded.upper[i] = std::max(fallback, bounded.lower[i] + 2 * fallback);
  }
  return bounded;
}

double ConventionalPWL::max_jacobian_norm() const {
  double best = 0.0;
  for (const auto& p : pieces_) best = std::max(best, p.jacobian().norm());
  return best;
}

}  // namespace pwlnn
