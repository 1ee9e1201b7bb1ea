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

#include "pwlnn/core/conventional.hpp"
#include "pwlnn/repr/models.hpp"

namespace pwlnn {

inline constexpr std::size_t kDefaultLatticeDensity = 33;

// Axis-aligned bounds implied by the model's domain, when all are finite.
std::optional<Box> declared_bounds(const ConventionalPWL& model);

// S_i = {i} plus every j with l_j >= l_i at all grid probes inside region i.
// Probes come from a grid of `density` points per axis over the region's
// bounding box. Throws DiscontinuousModel for discontinuous input and
// InvalidModel when neither the domain nor `box` bounds the probe area, or
// when the built lattice disagrees with the model at a probe.
LatticeModel lattice_from_conventional(const ConventionalPWL& model,
                                       std::size_t density = kDefaultLatticeDensity,
                                       std::optional<Box> box = std::nullopt);

}  // namespace pwlnn
