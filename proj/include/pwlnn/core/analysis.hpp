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
#include <string>
#include <vector>

#include "pwlnn/core/conventional.hpp"

namespace pwlnn {

// {x : normal . x = offset}, normal sign-canonical (first non-zero entry > 0).
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  double signed_value(const Vector& x) const { return ordered_dot(normal, x) - offset; }
  // Sign-canonical copy of a halfspace boundary.
  static Hyperplane from_halfspace(const Halfspace& h);
  bool same_as(const Hyperplane& other, double tolerance = 1e-12) const;
};

// Distinct boundary hyperplanes of all regions, in first-seen order.
std::vector<Hyperplane> boundary_hyperplanes(const ConventionalPWL& model);

// A point p on hyperplane `plane` with p + eps*n in region `positive` and
// p - eps*n in region `negative` (indices into model.regions()). When both
// indices are equal the hyperplane passes through the region's interior.
struct FacetWitness {
  std::size_t plane = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  Vector point;
};

std::vector<FacetWitness> sample_facets(const ConventionalPWL& model,
                                        const std::vector<Hyperplane>& planes,
                                        std::size_t samples_per_facet);

struct ContinuityViolation {
  int label_a = 0;
  int label_b = 0;
  Vector point;
  double value_a = 0.0;
  double value_b = 0.0;
};

struct ContinuityReport {
  std::vector<ContinuityViolation> violations;
  std::size_t witnesses = 0;

  bool continuous() const { return violations.empty(); }
};

inline constexpr double kContinuityTolerance = 1e-9;

// One violation per (hyperplane, region pair), keeping the worst witness.
ContinuityReport check_continuity(const ConventionalPWL& model,
                                  std::size_t samples_per_facet = 64);

class DiscontinuousModel : public Error {
 public:
  explicit DiscontinuousModel(ContinuityReport report);
  const ContinuityReport& report() const { return report_; }

 private:
  ContinuityReport report_;
};

// Jacobian jump across a hyperplane: J(+ side) - J(- side) = jump * normal.
struct HyperplaneJump {
  Hyperplane plane;
  double jump = 0.0;
};

struct VariationCertificate {
  Hyperplane plane;
  std::string reason;
  std::vector<Vector> witnesses;
  std::vector<double> jumps;
};

struct ConsistentVariationResult {
  bool representable = true;
  std::vector<HyperplaneJump> jumps;
  std::optional<VariationCertificate> certificate;
};

// Decides CPLR representability. Throws DiscontinuousModel for input that
// fails check_continuity.
ConsistentVariationResult check_consistent_variation(
    const ConventionalPWL& model, std::size_t samples_per_facet = 64);

}  // namespace pwlnn
