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

#include <string>
#include <vector>

#include "pwlnn/learning/fit.hpp"
#include "pwlnn/repr/models.hpp"

namespace pwlnn {

// Node of the generic basis tree. Node 0 is the constant basis B0; every
// other node extends its parent's factor list by one hinge factor.
struct AhhTreeNode {
  std::size_t parent = 0;
  AhhModel::Factor factor;
  bool pruned = false;
};

struct AhhFit {
  AhhModel model;
  FitTrace trace;
  std::vector<AhhTreeNode> tree;
};

// Indented tree listing, one node per line.
std::string describe_tree(const std::vector<AhhTreeNode>& tree);

// Type-7 quantiles at 5%, 10%, ..., 95%, deduplicated and sorted.
std::vector<double> knot_candidates(std::vector<double> values);

// Forward growth of min-of-hinge bases from B0 in pairs, then backward
// pruning on validation SSE. `max_terms` bounds the non-constant bases.
AhhFit fit_ahh(const Dataset& data, const FitConfig& config);

}  // namespace pwlnn
