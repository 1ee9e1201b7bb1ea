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
#include <vector>

#include "pwlnn/core/affine.hpp"
#include "pwlnn/core/error.hpp"

namespace pwlnn {

// Canonical piecewise-linear representation:
//   linear(x) + sum_m eta_m * |inner_m(x)|,   eta_m in {+1, -1}.
class CplrModel {
 public:
  struct Term {
    int eta = 1;
    AffineFunction inner;
  };

  CplrModel(AffineFunction linear, std::vector<Term> terms);

  std::size_t dimension() const { return linear_.dimension(); }
  const AffineFunction& linear() const { return linear_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  AffineFunction linear_;
  std::vector<Term> terms_;
};

// Nested CPLR as an expression tree. Each node is affine(x) plus a weighted
// sum of absolute values of child nodes.
struct NestedAbsTerm;

struct NestedCplrNode {
  AffineFunction affine;
  std::vector<NestedAbsTerm> terms;

  // 0 for a bare affine node.
  std::size_t depth() const;
};

struct NestedAbsTerm {
  double coefficient = 1.0;
  NestedCplrNode inner;
};

class NestedCplrModel {
 public:
  explicit NestedCplrModel(NestedCplrNode root);
  // Wraps a one-level CPLR as a tree.
  static NestedCplrModel from_cplr(const CplrModel& model);

  std::size_t dimension() const { return root_.affine.dimension(); }
  const NestedCplrNode& root() const { return root_; }
  // Number of nested |.| levels, at least 1.
  std::size_t nesting_level() const;

 private:
  NestedCplrNode root_;
};

// Hinging hyperplanes: linear(x) + sum_m w_m * max{inner_m(x), 0}.
class HingeModel {
 public:
  struct Hinge {
    double weight = 1.0;
    AffineFunction inner;
  };

  HingeModel(AffineFunction linear, std::vector<Hinge> hinges);

  std::size_t dimension() const { return linear_.dimension(); }
  const AffineFunction& linear() const { return linear_; }
  const std::vector<Hinge>& hinges() const { return hinges_; }

 private:
  AffineFunction linear_;
  std::vector<Hinge> hinges_;
};

// Generalized hinging hyperplanes: sum_m w_m * max over the term's affines.
class GhhModel {
 public:
  struct Term {
    double weight = 1.0;
    std::vector<AffineFunction> affines;
  };

  GhhModel(std::size_t dimension, std::vector<Term> terms);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Term>& terms() const { return terms_; }
  // Largest k_m, where a term holds k_m + 1 affines.
  std::size_t order() const;

 private:
  std::size_t dimension_;
  std::vector<Term> terms_;
};

// max{0, min_r (x_{axis_r} - knot_r * interval)}
class HlCplrBasis {
 public:
  struct Coordinate {
    std::size_t axis = 0;
    long long knot = 0;
  };

  HlCplrBasis(double interval, std::vector<Coordinate> coordinates);

  double interval() const { return interval_; }
  const std::vector<Coordinate>& coordinates() const { return coordinates_; }
  std::size_t max_axis() const;

 private:
  double interval_;
  std::vector<Coordinate> coordinates_;
};

// constant + sum_m w_m * B_m(x) over HL-CPLR bases sharing one grid interval.
class HlCplrModel {
 public:
  struct Term {
    double weight = 1.0;
    HlCplrBasis basis;
  };

  HlCplrModel(std::size_t dimension, double constant, std::vector<Term> terms);

  std::size_t dimension() const { return dimension_; }
  double constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::size_t dimension_;
  double constant_;
  std::vector<Term> terms_;
};

// Adaptive hinging hyperplanes. A basis is min over factors of
// max{0, sign * (x_variable - knot)}; the constant basis B0 = 1 carries
// `constant`.
class AhhModel {
 public:
  struct Factor {
    int sign = 1;
    std::size_t variable = 0;
    double knot = 0.0;
  };
  struct Basis {
    double weight = 1.0;
    std::vector<Factor> factors;
  };

  AhhModel(std::size_t dimension, double constant, std::vector<Basis> bases);

  std::size_t dimension() const { return dimension_; }
  double constant() const { return constant_; }
  const std::vector<Basis>& bases() const { return bases_; }

  // Value of one basis; an empty factor list is the constant basis.
  static double basis_value(const std::vector<Factor>& factors, const Vector& x);

 private:
  std::size_t dimension_;
  double constant_;
  std::vector<Basis> bases_;
};

// Simplex basis functions: sum_m w_m * max{0, 1 - sum_i gamma_i |x_i - center_i|}.
class SbfModel {
 public:
  struct Basis {
    double weight = 1.0;
    Vector gamma;
    Vector center;
  };

  SbfModel(std::size_t dimension, std::vector<Basis> bases);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Basis>& bases() const { return bases_; }

  static double basis_value(const Vector& gamma, const Vector& center, const Vector& x);

 private:
  std::size_t dimension_;
  std::vector<Basis> bases_;
};

// max_i min_{j in S_i} affine_j(x). Selection indices are 0-based.
class LatticeModel {
 public:
  LatticeModel(std::vector<AffineFunction> affines,
               std::vector<std::vector<std::size_t>> selections);

  std::size_t dimension() const { return affines_.front().dimension(); }
  const std::vector<AffineFunction>& affines() const { return affines_; }
  const std::vector<std::vector<std::size_t>>& selections() const { return selections_; }

 private:
  std::vector<AffineFunction> affines_;
  std::vector<std::vector<std::size_t>> selections_;
};

double evaluate(const CplrModel& model, const Vector& x);
double evaluate(const NestedCplrModel& model, const Vector& x);
double evaluate(const HingeModel& model, const Vector& x);
double evaluate(const GhhModel& model, const Vector& x);
double evaluate(const HlCplrBasis& basis, const Vector& x);
double evaluate(const HlCplrModel& model, const Vector& x);
double evaluate(const AhhModel& model, const Vector& x);
double evaluate(const SbfModel& model, const Vector& x);
double evaluate(const LatticeModel& model, const Vector& x);

// Rewrites |u| = 2 max{u, 0} - u term by term.
HingeModel hinge_from_cplr(const CplrModel& model);
// Inverse rewrite max{u, 0} = (u + |u|) / 2; exact for one-dimensional input.
CplrModel cplr_from_hinge(const HingeModel& model);

// Upper bound on the Lipschitz constant in the Euclidean norm.
double lipschitz_bound(const CplrModel& model);
double lipschitz_bound(const NestedCplrModel& model);
double lipschitz_bound(const HingeModel& model);
double lipschitz_bound(const GhhModel& model);
double lipschitz_bound(const HlCplrModel& model);
double lipschitz_bound(const AhhModel& model);
double lipschitz_bound(const SbfModel& model);
double lipschitz_bound(const LatticeModel& model);

}  // namespace pwlnn
