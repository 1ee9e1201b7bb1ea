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

#include "pwlnn/transforms/lattice_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwlnn/core/analysis.hpp"
#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

constexpr double kDominanceTolerance = 1e-9;

double scale_of(double v) { return std::max(1.0, std::abs(v)); }

}  // namespace

std::optional<Box> declared_bounds(const ConventionalPWL& model) {
  if (!model.domain()) return std::nullopt;
  const auto n = static_cast<Eigen::Index>(model.dimension());
  const double inf = std::numeric_limits<double>::infinity();
  const Box open(Vector::Constant(n, -inf), Vector::Constant(n, inf));
  Box bounds = model.domain()->bounding_box(open);
  if (!bounds.lower.allFinite() || !bounds.upper.allFinite()) return std::nullopt;
  return bounds;
}

LatticeModel lattice_from_conventional(const ConventionalPWL& model, std::size_t density,
                                       std::optional<Box> box) {
  if (density < 2) throw InvalidModel("lattice probe density must be at least 2");
  if (!box) box = declared_bounds(model);
  if (!box) throw InvalidModel("model domain is unbounded; supply a probe box");
  require_dimension(model.dimension(), box->dimension(), "lattice probe box");

  auto continuity = check_continuity(model);
  if (!continuity.continuous()) throw DiscontinuousModel(std::move(continuity));

  const auto& pieces = model.pieces();
  const std::size_t d = pieces.size();
  std::vector<std::vector<std::size_t>> selections(d);
  std::vector<Vector> all_probes;
  for (std::size_t i = 0; i < d; ++i) {
    const Region& region = model.regions()[i];
    std::vector<Vector> probes;
    for_each_grid_point(region.bounding_box(*box), density, [&](const Vector& x) {
      if (box->contains(x, 1e-12) && region.contains(x) && model.locate(x)) probes.push_back(x);
    });
    if (auto interior = region.find_interior_point(*box)) probes.push_back(*interior);
    if (probes.empty()) throw EmptyRegion(region.label());

    selections[i].push_back(i);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      const bool dominates = std::all_of(probes.begin(), probes.end(), [&](const Vector& x) {
        const double li = pieces[i](x);
        return pieces[j](x) >= li - kDominanceTolerance * scale_of(li);
      });
      if (dominates) selections[i].push_back(j);
    }
    all_probes.insert(all_probes.end(), probes.begin(), probes.end());
  }

  LatticeModel lattice(pieces, std::move(selections));
  for (const auto& x : all_probes) {
    const double expected = model(x);
    const double got = evaluate(lattice, x);
    if (std::abs(got - expected) > kDominanceTolerance * scale_of(expected)) {
      throw InvalidModel("lattice disagrees with the conventional model at (" +
                         format_numbers(x) + "): " + format_number(got) + " vs " +
                         format_number(expected));
    }
  }
  return lattice;
}

}  // namespace pwlnn
