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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pwlnn/core/sampling.hpp"
#include "pwlnn/dnn/network.hpp"

namespace pwlnn {

// Piece index per hidden unit, layer by layer. For ReLU 0 is off and 1 is
// on; for Maxout it is the winning input within the group.
struct ActivationPattern {
  std::vector<std::vector<std::size_t>> states;

  std::string str() const;  // "1;0;1|0;1"
  auto operator<=>(const ActivationPattern&) const = default;
};

// x -> jacobian * x + bias, one row per network output.
struct LocalAffineMap {
  Matrix jacobian;
  Vector bias;

  Vector operator()(const Vector& x) const;
};

struct PatternAtPoint {
  ActivationPattern pattern;
  LocalAffineMap map;
};

PatternAtPoint activation_pattern(const Network& net, const Vector& x);

enum class RegionMethod { PatternEnumeration, GridProbe };
RegionMethod parse_region_method(const std::string& name);
std::string region_method_name(RegionMethod method);

inline constexpr std::size_t kRegionUnitBudget = 20;

struct RegionCertificate {
  ActivationPattern pattern;
  Vector witness;  // strictly inside the region and the box
  LocalAffineMap map;
};

struct RegionCount {
  std::size_t count = 0;
  RegionMethod method = RegionMethod::PatternEnumeration;
  std::vector<RegionCertificate> certificates;
};

struct RegionOptions {
  // 0 picks a density from the input dimension.
  std::size_t grid_density = 0;
  std::uint64_t seed = 1;
};

// Pattern enumeration seeds from grid and lattice samples, then walks each
// region's vertices inside the box and probes every adjacent orthant until
// no new pattern appears. Grid probe counts distinct local affine maps on a
// grid. Networks with more than kRegionUnitBudget hidden units are refused.
RegionCount count_regions(const Network& net, const Box& box, RegionMethod method,
                          const RegionOptions& options = {});

// region,pattern,witness,jacobian,bias (rows separated by '|')
void write_region_certificates(std::ostream& out, const RegionCount& result);

// sum_{j=0}^{n} C(m, j); throws BudgetExceeded if it does not fit in 64 bits.
std::uint64_t zaslavsky_bound(std::uint64_t hyperplanes, std::uint64_t dimension);

}  // namespace pwlnn
