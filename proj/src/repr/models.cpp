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

#include "pwlnn/repr/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace pwlnn {

namespace {

void require_same_dimension(std::size_t n, const AffineFunction& f, const char* what) {
  require_dimension(n, f.dimension(), what);
}

double evaluate_node(const NestedCplrNode& node, const Vector& x) {
  double value = node.affine(x);
  for (const auto& t : node.terms) value += t.coefficient * std::abs(evaluate_node(t.inner, x));
  return value;
}

void check_node(const NestedCplrNode& node, std::size_t n) {
  require_same_dimension(n, node.affine, "nested CPLR node");
  for (const auto& t : node.terms) check_node(t.inner, n);
}

double node_lipschitz(const NestedCplrNode& node) {
  double bound = node.affine.jacobian().norm();
  for (const auto& t : node.terms) bound += std::abs(t.coefficient) * node_lipschitz(t.inner);
  return bound;
}

}  // namespace

CplrModel::CplrModel(AffineFunction linear, std::vector<Term> terms)
    : linear_(std::move(linear)), terms_(std::move(terms)) {
  if (linear_.dimension() == 0) throw InvalidModel("CPLR model needs a positive dimension");
  for (const auto& t : terms_) {
    if (t.eta != 1 && t.eta != -1) {
      throw InvalidModel("CPLR sign eta must be +1 or -1, got " + std::to_string(t.eta));
    }
    require_same_dimension(dimension(), t.inner, "CPLR term");
  }
}

std::size_t NestedCplrNode::depth() const {
  std::size_t d = 0;
  for (const auto& t : terms) d = std::max(d, 1 + t.inner.depth());
  return d;
}

NestedCplrModel::NestedCplrModel(NestedCplrNode root) : root_(std::move(root)) {
  if (root_.affine.dimension() == 0) {
    throw InvalidModel("nested CPLR model needs a positive dimension");
  }
  check_node(root_, dimension());
}

NestedCplrModel NestedCplrModel::from_cplr(const CplrModel& model) {
  NestedCplrNode root{model.linear(), {}};
  for (const auto& t : model.terms()) {
    root.terms.push_back(NestedAbsTerm{static_cast<double>(t.eta), NestedCplrNode{t.inner, {}}});
  }
  return NestedCplrModel(std::move(root));
}

std::size_t NestedCplrModel::nesting_level() const { return std::max<std::size_t>(1, root_.depth()); }

HingeModel::HingeModel(AffineFunction linear, std::vector<Hinge> hinges)
    : linear_(std::move(linear)), hinges_(std::move(hinges)) {
  if (linear_.dimension() == 0) throw InvalidModel("hinge model needs a positive dimension");
  for (const auto& h : hinges_) require_same_dimension(dimension(), h.inner, "hinge");
}

GhhModel::GhhModel(std::size_t dimension, std::vector<Term> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  if (dimension_ == 0) throw InvalidModel("GHH model needs a positive dimension");
  for (std::size_t m = 0; m < terms_.size(); ++m) {
    if (terms_[m].affines.empty()) {
      throw InvalidModel("GHH term " + std::to_string(m + 1) + " has an empty affine list");
    }
    for (const auto& a : terms_[m].affines) require_same_dimension(dimension_, a, "GHH term");
  }
}

std::size_t GhhModel::order() const {
  std::size_t k = 0;
  for (const auto& t : terms_) k = std::max(k, t.affines.size() - 1);
  return k;
}

HlCplrBasis::HlCplrBasis(double interval, std::vector<Coordinate> coordinates)
    : interval_(interval), coordinates_(std::move(coordinates)) {
  if (!(interval_ > 0.0)) throw InvalidModel("HL-CPLR grid interval must be positive");
  if (coordinates_.empty()) throw InvalidModel("HL-CPLR basis needs at least one coordinate");
  std::set<std::size_t> axes;
  for (const auto& c : coordinates_) {
    if (!axes.insert(c.axis).second) {
      throw InvalidModel("HL-CPLR basis repeats axis " + std::to_string(c.axis + 1));
    }
  }
}

std::size_t HlCplrBasis::max_axis() const {
  std::size_t m = 0;
  for (const auto& c : coordinates_) m = std::max(m, c.axis);
  return m;
}

HlCplrModel::HlCplrModel(std::size_t dimension, double constant, std::vector<Term> terms)
    : dimension_(dimension), constant_(constant), terms_(std::move(terms)) {
  if (dimension_ == 0) throw InvalidModel("HL-CPLR model needs a positive dimension");
  for (const auto& t : terms_) {
    if (t.basis.max_axis() >= dimension_) {
      throw InvalidModel("HL-CPLR axis " + std::to_string(t.basis.max_axis() + 1) +
                         " out of range for dimension " + std::to_string(dimension_));
    }
  }
}

AhhModel::AhhModel(std::size_t dimension, double constant, std::vector<Basis> bases)
    : dimension_(dimension), constant_(constant), bases_(std::move(bases)) {
  if (dimension_ == 0) throw InvalidModel("AHH model needs a positive dimension");
  for (const auto& b : bases_) {
    for (const auto& f : b.factors) {
      if (f.sign != 1 && f.sign != -1) throw InvalidModel("AHH factor sign must be +1 or -1");
      if (f.variable >= dimension_) {
        throw InvalidModel("AHH variable index " + std::to_string(f.variable + 1) +
                           " out of range [1.." + std::to_string(dimension_) + "]");
      }
    }
  }
}

double AhhModel::basis_value(const std::vector<Factor>& factors, const Vector& x) {
  double value = std::numeric_limits<double>::infinity();
  for (const auto& f : factors) {
    const double h = std::max(0.0, f.sign * (x[static_cast<Eigen::Index>(f.variable)] - f.knot));
    value = std::min(value, h);
  }
  return factors.empty() ? 1.0 : value;
}

SbfModel::SbfModel(std::size_t dimension, std::vector<Basis> bases)
    : dimension_(dimension), bases_(std::move(bases)) {
  if (dimension_ == 0) throw InvalidModel("SBF model needs a positive dimension");
  for (const auto& b : bases_) {
    require_dimension(dimension_, static_cast<std::size_t>(b.gamma.size()), "SBF gamma");
    require_dimension(dimension_, static_cast<std::size_t>(b.center.size()), "SBF center");
    if ((b.gamma.array() < 0.0).any() || !b.gamma.allFinite()) {
      throw InvalidModel("SBF shape parameters gamma must be non-negative");
    }
  }
}

double SbfModel::basis_value(const Vector& gamma, const Vector& center, const Vector& x) {
  double spread = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) spread += gamma[i] * std::abs(x[i] - center[i]);
  return std::max(0.0, 1.0 - spread);
}

LatticeModel::LatticeModel(std::vector<AffineFunction> affines,
                           std::vector<std::vector<std::size_t>> selections)
    : affines_(std::move(affines)), selections_(std::move(selections)) {
  if (affines_.empty()) throw InvalidModel("lattice model needs at least one affine function");
  if (selections_.empty()) throw InvalidModel("lattice model needs at least one selection set");
  if (affines_.front().dimension() == 0) throw InvalidModel("lattice model needs a positive dimension");
  for (const auto& a : affines_) require_same_dimension(dimension(), a, "lattice affine");
  for (std::size_t i = 0; i < selections_.size(); ++i) {
    auto& s = selections_[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) {
      throw InvalidModel("lattice selection set S_" + std::to_string(i + 1) + " is empty");
    }
    for (std::size_t j : selections_[i]) {
      if (j >= affines_.size()) {
        throw InvalidModel("lattice selection set S_" + std::to_string(i + 1) +
                           " references affine " + std::to_string(j + 1) + " of " +
                           std::to_string(affines_.size()));
      }
    }
  }
}

double evaluate(const CplrModel& model, const Vector& x) {
  double value = model.linear()(x);
  for (const auto& t : model.terms()) value += t.eta * std::abs(t.inner(x));
  return value;
}

double evaluate(const NestedCplrModel& model, const Vector& x) {
  require_dimension(model.dimension(), static_cast<std::size_t>(x.size()), "nested CPLR evaluation");
  return evaluate_node(model.root(), x);
}

double evaluate(const HingeModel& model, const Vector& x) {
  double value = model.linear()(x);
  for (const auto& h : model.hinges()) value += h.weight * std::max(h.inner(x), 0.0);
  return value;
}

double evaluate(const GhhModel& model, const Vector& x) {
  require_dimension(model.dimension(), static_cast<std::size_t>(x.size()), "GHH evaluation");
  double value = 0.0;
  for (const auto& t : model.terms()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : t.affines) best = std::max(best, a(x));
    value += t.weight * best;
  }
  return value;
}

double evaluate(const HlCplrBasis& basis, const Vector& x) {
  if (basis.max_axis() >= static_cast<std::size_t>(x.size())) {
    throw DimensionMismatch(basis.max_axis() + 1, static_cast<std::size_t>(x.size()),
                            "HL-CPLR basis evaluation");
  }
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& c : basis.coordinates()) {
    smallest = std::min(smallest, x[static_cast<Eigen::Index>(c.axis)] -
                                      static_cast<double>(c.knot) * basis.interval());
  }
  return std::max(0.0, smallest);
}

double evaluate(const HlCplrModel& model, const Vector& x) {
  require_dimension(model.dimension(), static_cast<std::size_t>(x.size()), "HL-CPLR evaluation");
  double value = model.constant();
  for (const auto& t : model.terms()) value += t.weight * evaluate(t.basis, x);
  return value;
}

double evaluate(const AhhModel& model, const Vector& x) {
  require_dimension(model.dimension(), static_cast<std::size_t>(x.size()), "AHH evaluation");
  double value = model.constant();
  for (const auto& b : model.bases()) value += b.weight * AhhModel::basis_value(b.factors, x);
  return value;
}

double evaluate(const SbfModel& model, const Vector& x) {
  require_dimension(model.dimension(), static_cast<std::size_t>(x.size()), "SBF evaluation");
  double value = 0.0;
  for (const auto& b : model.bases()) value += b.weight * SbfModel::basis_value(b.gamma, b.center, x);
  return value;
}

double evaluate(const LatticeModel& model, const Vector& x) {
  require_dimension(model.dimension(), static_cast<std::size_t>(x.size()), "lattice evaluation");
  std::vector<double> values(model.affines().size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = model.affines()[j](x);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : model.selections()) {
    double row = std::numeric_limits<double>::infinity();
    for (std::size_t j : s) row = std::min(row, values[j]);
    best = std::max(best, row);
  }
  return best;
}

HingeModel hinge_from_cplr(const CplrModel& model) {
  AffineFunction linear = model.linear();
  std::vector<HingeModel::Hinge> hinges;
  for (const auto& t : model.terms()) {
    linear = linear + (t.eta > 0 ? -t.inner : t.inner);
    hinges.push_back(HingeModel::Hinge{2.0 * t.eta, t.inner});
  }
  return HingeModel(std::move(linear), std::move(hinges));
}

CplrModel cplr_from_hinge(const HingeModel& model) {
  AffineFunction linear = model.linear();
  std::vector<CplrModel::Term> terms;
  for (const auto& h : model.hinges()) {
    if (h.weight == 0.0) continue;
    const double half = std::abs(h.weight) / 2.0;
    const AffineFunction scaled = h.inner * half;
    linear = linear + (h.weight > 0 ? scaled : -scaled);
    terms.push_back(CplrModel::Term{h.weight > 0 ? 1 : -1, scaled});
  }
  return CplrModel(std::move(linear), std::move(terms));
}

double lipschitz_bound(const CplrModel& model) {
  double bound = model.linear().jacobian().norm();
  for (const auto& t : model.terms()) bound += t.inner.jacobian().norm();
  return bound;
}

double lipschitz_bound(const NestedCplrModel& model) { return node_lipschitz(model.root()); }

double lipschitz_bound(const HingeModel& model) {
  double bound = model.linear().jacobian().norm();
  for (const auto& h : model.hinges()) bound += std::abs(h.weight) * h.inner.jacobian().norm();
  return bound;
}

double lipschitz_bound(const GhhModel& model) {
  double bound = 0.0;
  for (const auto& t : model.terms()) {
    double term = 0.0;
    for (const auto& a : t.affines) term = std::max(term, a.jacobian().norm());
    bound += std::abs(t.weight) * term;
  }
  return bound;
}

double lipschitz_bound(const HlCplrModel& model) {
  double bound = 0.0;
  for (const auto& t : model.terms()) bound += std::abs(t.weight);
  return bound;
}

double lipschitz_bound(const AhhModel& model) {
  double bound = 0.0;
  for (const auto& b : model.bases()) {
    if (!b.factors.empty()) bound += std::abs(b.weight);
  }
  return bound;
}

double lipschitz_bound(const SbfModel& model) {
  double bound = 0.0;
  for (const auto& b : model.bases()) bound += std::abs(b.weight) * b.gamma.norm();
  return bound;
}

double lipschitz_bound(const LatticeModel& model) {
  double bound = 0.0;
  for (const auto& a : model.affines()) bound = std::max(bound, a.jacobian().norm());
  return bound;
}

}  // namespace pwlnn
