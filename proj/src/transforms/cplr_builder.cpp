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

#include "pwlnn/transforms/cplr_builder.hpp"

#include <algorithm>
#include <cmath>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

constexpr double kAgreementTolerance = 1e-9;

std::size_t grid_density_for(std::size_t n) {
  if (n == 1) return 1001;
  if (n == 2) return 101;
  if (n == 3) return 21;
  return 5;
}

}  // namespace

NotCplrRepresentable::NotCplrRepresentable(VariationCertificate certificate)
    : Error("model is not CPLR representable: " + certificate.reason),
      certificate_(std::move(certificate)) {}

CplrModel cplr_from_consistent(const ConventionalPWL& model) {
  auto decision = check_consistent_variation(model);
  if (!decision.representable) throw NotCplrRepresentable(std::move(*decision.certificate));

  const std::size_t n = model.dimension();
  const Box box = model.probe_box();
  double scale = 1.0;
  for (const auto& j : decision.jumps) scale = std::max(scale, std::abs(j.jump));

  std::vector<CplrModel::Term> terms;
  std::vector<double> jumps;
  for (const auto& j : decision.jumps) {
    if (std::abs(j.jump) <= 1e-12 * scale) continue;
    const double half = std::abs(j.jump) / 2.0;
    terms.push_back({j.jump > 0 ? 1 : -1, AffineFunction(j.plane.normal * half, -j.plane.offset * half)});
    jumps.push_back(j.jump);
  }

  // Affine part: piece minus the |.| terms' local affine form on that region.
  auto residual_affine = [&](std::size_t region, const Vector& p) {
    Vector jac = model.pieces()[region].jacobian();
    double bias = model.pieces()[region].bias();
    for (const auto& t : terms) {
      const double s = t.inner(p) >= 0 ? 1.0 : -1.0;
      jac -= t.eta * s * t.inner.jacobian();
      bias -= t.eta * s * t.inner.bias();
    }
    return AffineFunction(jac, bias);
  };

  std::vector<std::size_t> order(model.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return model.regions()[a].label() < model.regions()[b].label();
  });
  std::optional<AffineFunction> linear;
  for (std::size_t i : order) {
    if (auto p = model.regions()[i].find_interior_point(box)) {
      linear = residual_affine(i, *p);
      break;
    }
  }
  if (!linear) throw EmptyRegion(model.regions().front().label());

  CplrModel result(*linear, std::move(terms));
  const std::size_t density = grid_density_for(n);
  for_each_grid_point(box, density, [&](const Vector& x) {
    const auto region = model.locate(x);
    if (!region) return;
    const double expected = model.pieces()[*region](x);
    const double got = evaluate(result, x);
    if (std::abs(got - expected) >
        kAgreementTolerance * std::max({1.0, std::abs(expected), scale * box.diameter()})) {
      Hyperplane plane{Vector::Zero(static_cast<Eigen::Index>(n)), 0.0};
      if (!decision.jumps.empty()) plane = decision.jumps.front().plane;
      throw NotCplrRepresentable(VariationCertificate{
          plane, "reconstructed CPLR disagrees with the model at (" + format_numbers(x) + ")",
          {x}, jumps});
    }
  });
  return result;
}

}  // namespace pwlnn
