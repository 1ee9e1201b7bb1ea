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

#include "pwlnn/transforms/to_dc.hpp"

namespace pwlnn {

namespace {

DcForm constant(std::size_t n, double value) {
  return DcForm::affine(AffineFunction::constant(n, value));
}

DcForm relu(const DcForm& f) { return dc_max(f, constant(f.dimension(), 0.0)); }

DcForm node_to_dc(const NestedCplrNode& node) {
  DcForm sum = DcForm::affine(node.affine);
  for (const auto& t : node.terms) sum = dc_sum(sum, dc_scale(dc_abs(node_to_dc(t.inner)), t.coefficient));
  return sum;
}

}  // namespace

DcForm to_dc(const CplrModel& model) {
  DcForm sum = DcForm::affine(model.linear());
  for (const auto& t : model.terms()) {
    sum = dc_sum(sum, dc_scale(dc_abs(DcForm::affine(t.inner)), t.eta));
  }
  return sum;
}

DcForm to_dc(const NestedCplrModel& model) { return node_to_dc(model.root()); }

DcForm to_dc(const HingeModel& model) {
  DcForm sum = DcForm::affine(model.linear());
  for (const auto& h : model.hinges()) {
    sum = dc_sum(sum, dc_scale(relu(DcForm::affine(h.inner)), h.weight));
  }
  return sum;
}

DcForm to_dc(const GhhModel& model) {
  DcForm sum = constant(model.dimension(), 0.0);
  for (const auto& t : model.terms()) {
    const DcForm term(t.affines, {AffineFunction::zero(model.dimension())});
    sum = dc_sum(sum, dc_scale(term, t.weight));
  }
  return sum;
}

DcForm to_dc(const HlCplrModel& model) {
  const std::size_t n = model.dimension();
  DcForm sum = constant(n, model.constant());
  for (const auto& t : model.terms()) {
    const auto& coords = t.basis.coordinates();
    auto coordinate = [&](const HlCplrBasis::Coordinate& c) {
      return DcForm::affine(AffineFunction::coordinate(
          n, c.axis, 1.0, -static_cast<double>(c.knot) * t.basis.interval()));
    };
    DcForm inner = coordinate(coords.front());
    for (std::size_t r = 1; r < coords.size(); ++r) inner = dc_min(inner, coordinate(coords[r]));
    sum = dc_sum(sum, dc_scale(relu(inner), t.weight));
  }
  return sum;
}

DcForm to_dc(const AhhModel& model) {
  const std::size_t n = model.dimension();
  DcForm sum = constant(n, model.constant());
  for (const auto& b : model.bases()) {
    if (b.factors.empty()) {
      sum = dc_sum(sum, constant(n, b.weight));
      continue;
    }
    auto hinge = [&](const AhhModel::Factor& f) {
      return relu(DcForm::affine(
          AffineFunction::coordinate(n, f.variable, f.sign, -f.sign * f.knot)));
    };
    DcForm basis = hinge(b.factors.front());
    for (std::size_t k = 1; k < b.factors.size(); ++k) basis = dc_min(basis, hinge(b.factors[k]));
    sum = dc_sum(sum, dc_scale(basis, b.weight));
  }
  return sum;
}

DcForm to_dc(const SbfModel& model) {
  const std::size_t n = model.dimension();
  DcForm sum = constant(n, 0.0);
  for (const auto& b : model.bases()) {
    DcForm inner = constant(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      if (b.gamma[idx] == 0.0) continue;
      const DcForm dist = dc_abs(DcForm::affine(AffineFunction::coordinate(n, i, 1.0, -b.center[idx])));
      inner = dc_sum(inner, dc_scale(dist, -b.gamma[idx]));
    }
    sum = dc_sum(sum, dc_scale(relu(inner), b.weight));
  }
  return sum;
}

DcForm to_dc(const LatticeModel& model) {
  std::vector<DcForm> rows;
  for (const auto& s : model.selections()) {
    DcForm row = DcForm::affine(model.affines()[s.front()]);
    for (std::size_t k = 1; k < s.size(); ++k) row = dc_min(row, DcForm::affine(model.affines()[s[k]]));
    rows.push_back(std::move(row));
  }
  DcForm result = rows.front();
  for (std::size_t i = 1; i < rows.size(); ++i) result = dc_max(result, rows[i]);
  return result;
}

}  // namespace pwlnn
