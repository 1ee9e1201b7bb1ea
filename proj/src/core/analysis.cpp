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

#include "pwlnn/core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace pwlnn {

namespace {

bool close_relative(double a, double b, double tolerance) {
  return std::abs(a - b) <= tolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<Vector> points_on_plane(const Hyperplane& plane, const Box& box,
                                    std::size_t samples) {
  std::vector<Vector> points;
  const double nn = plane.normal.squaredNorm();
  auto project = [&](const Vector& x) -> Vector {
    return x - (plane.signed_value(x) / nn) * plane.normal;
  };
  const double slack = 1e-12 * std::max(1.0, box.diameter());
  if (plane.normal.size() == 1) {
    Vector p(1);
    p[0] = plane.offset / plane.normal[0];
    if (box.contains(p, slack)) points.push_back(p);
    return points;
  }
  Vector center = project((box.lower + box.upper) / 2.0);
  if (box.contains(center, slack)) points.push_back(center);
  for (const auto& x : lattice_rule_points(box, samples)) {
    Vector p = project(x);
    if (box.contains(p, slack)) points.push_back(std::move(p));
  }
  return points;
}

std::string describe_violation(const ContinuityReport& report) {
  std::ostringstream out;
  out << "model is discontinuous (" << report.violations.size()
      << " facet violations found by the continuity check)";
  return out.str();
}

}  // namespace

Hyperplane Hyperplane::from_halfspace(const Halfspace& h) {
  Hyperplane plane{h.normal, h.offset};
  for (Eigen::Index i = 0; i < plane.normal.size(); ++i) {
    if (plane.normal[i] == 0.0) continue;
    if (plane.normal[i] < 0.0) {
      plane.normal = -plane.normal;
      plane.offset = 0.0 - plane.offset;
    }
    break;
  }
  return plane;
}

bool Hyperplane::same_as(const Hyperplane& other, double tolerance) const {
  if (normal.size() != other.normal.size()) return false;
  const double a = normal.norm();
  const double b = other.normal.norm();
  return (normal / a - other.normal / b).lpNorm<Eigen::Infinity>() <= tolerance &&
         std::abs(offset / a - other.offset / b) <= tolerance;
}

std::vector<Hyperplane> boundary_hyperplanes(const ConventionalPWL& model) {
  std::vector<Hyperplane> planes;
  for (const auto& region : model.regions()) {
    for (const auto& h : region.halfspaces()) {
      Hyperplane candidate = Hyperplane::from_halfspace(h);
      const bool seen = std::any_of(planes.begin(), planes.end(), [&](const Hyperplane& p) {
        return p.same_as(candidate);
      });
      if (!seen) planes.push_back(std::move(candidate));
    }
  }
  return planes;
}

std::vector<FacetWitness> sample_facets(const ConventionalPWL& model,
                                        const std::vector<Hyperplane>& planes,
                                        std::size_t samples_per_facet) {
  const Box box = model.probe_box();
  const double step = 1e-7 * std::max(1.0, box.diameter());
  std::vector<FacetWitness> witnesses;
  for (std::size_t k = 0; k < planes.size(); ++k) {
    const Vector unit = planes[k].normal / planes[k].normal.norm();
    for (const auto& p : points_on_plane(planes[k], box, samples_per_facet)) {
      const Vector above = p + step * unit;
      const Vector below = p - step * unit;
      const auto a = model.locate(above);
      const auto b = model.locate(below);
      if (!a || !b) continue;
      const Region& ra = model.regions()[*a];
      const Region& rb = model.regions()[*b];
      if (ra.depth(above) < step / 4 || rb.depth(below) < step / 4) continue;
      if (!ra.closure_contains(p) || !rb.closure_contains(p)) continue;
      witnesses.push_back(FacetWitness{k, *a, *b, p});
    }
  }
  return witnesses;
}

DiscontinuousModel::DiscontinuousModel(ContinuityReport report)
    : Error(describe_violation(report)), report_(std::move(report)) {}

ContinuityReport check_continuity(const ConventionalPWL& model,
                                  std::size_t samples_per_facet) {
  const auto planes = boundary_hyperplanes(model);
  const auto witnesses = sample_facets(model, planes, samples_per_facet);
  ContinuityReport report;
  report.witnesses = witnesses.size();
  // (plane, lower region index, upper region index) -> violation slot
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> slots;
  for (const auto& w : witnesses) {
    if (w.positive == w.negative) continue;
    const std::size_t lo = std::min(w.positive, w.negative);
    const std::size_t hi = std::max(w.positive, w.negative);
    const double va = model.pieces()[lo](w.point);
    const double vb = model.pieces()[hi](w.point);
    if (close_relative(va, vb, kContinuityTolerance)) continue;
    ContinuityViolation v{model.regions()[lo].label(), model.regions()[hi].label(),
                          w.point, va, vb};
    const auto key = std::make_tuple(w.plane, lo, hi);
    auto it = slots.find(key);
    if (it == slots.end()) {
      slots.emplace(key, report.violations.size());
      report.violations.push_back(std::move(v));
    } else if (std::abs(va - vb) > std::abs(report.violations[it->second].value_a -
                                            report.violations[it->second].value_b)) {
      report.violations[it->second] = std::move(v);
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const ContinuityViolation& a, const ContinuityViolation& b) {
              return std::tie(a.label_a, a.label_b) < std::tie(b.label_a, b.label_b);
            });
  return report;
}

ConsistentVariationResult check_consistent_variation(
    const ConventionalPWL& model, std::size_t samples_per_facet) {
  auto continuity = check_continuity(model, samples_per_facet);
  if (!continuity.continuous()) throw DiscontinuousModel(std::move(continuity));

  const auto planes = boundary_hyperplanes(model);
  const auto witnesses = sample_facets(model, planes, samples_per_facet);
  constexpr double kTolerance = 1e-9;

  ConsistentVariationResult result;
  std::vector<std::optional<std::pair<double, Vector>>> reference(planes.size());
  for (const auto& w : witnesses) {
    const Hyperplane& plane = planes[w.plane];
    const AffineFunction& up = model.pieces()[w.positive];
    const AffineFunction& down = model.pieces()[w.negative];
    const Vector delta = up.jacobian() - down.jacobian();
    const double jump = delta.dot(plane.normal) / plane.normal.squaredNorm();
    const double residual = (delta - jump * plane.normal).norm();
    if (residual > kTolerance * std::max(1.0, delta.norm())) {
      result.representable = false;
      result.certificate = VariationCertificate{
          plane, "jacobian jump across the boundary is not parallel to its normal",
          {w.point}, {jump}};
      return result;
    }
    auto& ref = reference[w.plane];
    if (!ref) {
      ref.emplace(jump, w.point);
    } else if (!close_relative(ref->first, jump, kTolerance)) {
      result.representable = false;
      result.certificate = VariationCertificate{
          plane, "jacobian jump varies along the boundary", {ref->second, w.point},
          {ref->first, jump}};
      return result;
    }
  }
  for (std::size_t k = 0; k < planes.size(); ++k) {
    if (reference[k]) result.jumps.push_back(HyperplaneJump{planes[k], reference[k]->first});
  }
  return result;
}

}  // namespace pwlnn
