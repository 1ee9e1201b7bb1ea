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

#include "pwlnn/learning/fit_ahh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pwlnn/core/text_io.hpp"
#include "pwlnn/learning/least_squares.hpp"

namespace pwlnn {

namespace {

struct Candidate {
  std::size_t parent = 0;
  std::size_t variable = 0;
  double knot = 0.0;
  std::vector<int> signs;
  double gain = 0.0;
};

Vector basis_column(const Matrix& x, const std::vector<AhhModel::Factor>& factors) {
  Vector c(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) c[i] = AhhModel::basis_value(factors, x.row(i).transpose());
  return c;
}

std::vector<AhhModel::Factor> factors_of(const std::vector<AhhTreeNode>& tree, std::size_t node) {
  std::vector<AhhModel::Factor> factors;
  while (node != 0) {
    factors.push_back(tree[node].factor);
    node = tree[node].parent;
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

Matrix design(const std::vector<Vector>& columns) {
  Matrix d(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) d.col(static_cast<Eigen::Index>(k)) = columns[k];
  return d;
}

// Orthonormal basis of span(columns) by modified Gram-Schmidt, dropping
// columns already in the span.
Matrix orthonormal(const std::vector<Vector>& columns) {
  std::vector<Vector> q;
  for (const auto& c : columns) {
    Vector v = c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) v -= u.dot(v) * u;
    }
    const double norm = v.norm();
    if (norm > 1e-10 * std::max(1.0, c.norm())) q.push_back(v / norm);
  }
  if (q.empty()) return Matrix(columns.front().size(), 0);
  return design(q);
}

// SSE reduction from adding `extra` to the span of Q with residual r.
double reduction(const Matrix& q, const Vector& r, const std::vector<Vector>& extra) {
  Matrix e(r.size(), static_cast<Eigen::Index>(extra.size()));
  for (std::size_t k = 0; k < extra.size(); ++k) {
    Vector v = extra[k];
    if (q.cols() > 0) v -= q * (q.transpose() * v);
    e.col(static_cast<Eigen::Index>(k)) = v;
  }
  const Matrix g = e.transpose() * e;
  const Vector b = e.transpose() * r;
  const double scale = std::max(1.0, g.diagonal().maxCoeff());
  Eigen::LDLT<Matrix> ldlt(g + 1e-12 * scale * Matrix::Identity(g.rows(), g.cols()));
  const Vector beta = ldlt.solve(b);
  const double gain = b.dot(beta);
  return std::isfinite(gain) ? gain : 0.0;
}

struct Model {
  std::vector<std::size_t> nodes;  // active tree nodes, node 0 first
  Vector weights;
  double sse = 0.0;
};

Model refit(const Matrix& x, const Vector& y, const std::vector<AhhTreeNode>& tree,
            std::vector<std::size_t> nodes, double ridge) {
  std::vector<Vector> columns;
  for (std::size_t node : nodes) columns.push_back(basis_column(x, factors_of(tree, node)));
  const Matrix d = design(columns);
  Model m{std::move(nodes), least_squares(d, y, ridge), 0.0};
  m.sse = sum_squared_error(d, m.weights, y);
  return m;
}

double sse_on(const Matrix& x, const Vector& y, const std::vector<AhhTreeNode>& tree, const Model& m) {
  std::vector<Vector> columns;
  for (std::size_t node : m.nodes) columns.push_back(basis_column(x, factors_of(tree, node)));
  return sum_squared_error(design(columns), m.weights, y);
}

AhhModel to_model(const std::vector<AhhTreeNode>& tree, const Model& m, std::size_t n) {
  double constant = 0.0;
  std::vector<AhhModel::Basis> bases;
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    const double w = m.weights[static_cast<Eigen::Index>(k)];
    if (m.nodes[k] == 0) {
      constant += w;
    } else {
      bases.push_back({w, factors_of(tree, m.nodes[k])});
    }
  }
  return AhhModel(n, constant, std::move(bases));
}

}  // namespace

std::vector<double> knot_candidates(std::vector<double> values) {
  std::vector<double> knots;
  if (values.empty()) return knots;
  std::sort(values.begin(), values.end());
  for (int step = 1; step <= 19; ++step) {
    const double p = 0.05 * step;
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    knots.push_back(frac == 0.0 ? values[lo] : values[lo] + frac * (values[hi] - values[lo]));
  }
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

std::string describe_tree(const std::vector<AhhTreeNode>& tree) {
  std::ostringstream out;
  std::vector<std::vector<std::size_t>> children(tree.size());
  for (std::size_t k = 1; k < tree.size(); ++k) children[tree[k].parent].push_back(k);
  auto visit = [&](auto&& self, std::size_t node, std::size_t depth) -> void {
    out << std::string(2 * depth, ' ') << 'B' << node;
    if (node == 0) {
      out << " = 1";
    } else {
      const auto& f = tree[node].factor;
      out << " = min(B" << tree[node].parent << ", max(0, " << (f.sign > 0 ? "+" : "-") << "(x"
          << f.variable + 1 << " - " << format_number(f.knot) << ")))";
    }
    if (tree[node].pruned) out << " [pruned]";
    out << '\n';
    for (std::size_t c : children[node]) self(self, c, depth + 1);
  };
  visit(visit, 0, 0);
  return out.str();
}

AhhFit fit_ahh(const Dataset& data, const FitConfig& config) {
  config.validate();
  const DataSplit split = split_dataset(data, config.validation_fraction, config.seed);
  const std::size_t n = data.dimension();
  const Matrix& x = split.train.inputs();
  const Vector& y = split.train.targets();
  const double energy = y.squaredNorm();

  std::vector<AhhTreeNode> tree{AhhTreeNode{}};
  Model model = refit(x, y, tree, {0}, config.ridge);
  AhhFit result{to_model(tree, model, n), FitTrace{}, {}};
  result.trace.train_size = split.train.size();
  result.trace.validation_size = split.shared ? 0 : split.validation.size();
  auto record = [&](const char* action) {
    result.trace.add(model.nodes.size() - 1, model.sse,
                     sse_on(split.validation.inputs(), split.validation.targets(), tree, model), action);
  };
  record("constant");

  while (model.nodes.size() - 1 < config.max_terms) {
    const std::size_t slots = config.max_terms - (model.nodes.size() - 1);
    std::vector<Vector> columns;
    for (std::size_t node : model.nodes) columns.push_back(basis_column(x, factors_of(tree, node)));
    const Matrix q = orthonormal(columns);
    const Vector residual = y - design(columns) * model.weights;

    std::optional<Candidate> best;
    for (std::size_t pi = 0; pi < model.nodes.size(); ++pi) {
      const std::size_t parent = model.nodes[pi];
      const auto parent_factors = factors_of(tree, parent);
      const Vector& parent_column = columns[pi];
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<double> support;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
          if (parent_column[i] > 0.0) support.push_back(x(i, static_cast<Eigen::Index>(v)));
        }
        if (support.empty()) continue;
        const auto [lo, hi] = std::minmax_element(support.begin(), support.end());
        if (*lo == *hi) continue;
        for (double knot : knot_candidates(support)) {
          std::vector<Vector> children;
          std::vector<int> signs;
          for (int sign : {1, -1}) {
            auto factors = parent_factors;
            factors.push_back({sign, v, knot});
            Vector c = basis_column(x, factors);
            if (c.isZero(0.0)) continue;
            children.push_back(std::move(c));
            signs.push_back(sign);
          }
          auto consider = [&](const std::vector<Vector>& cols, std::vector<int> s) {
            if (cols.empty() || cols.size() > slots) return;
            const double gain = reduction(q, residual, cols);
            if (!best || gain > best->gain) best = Candidate{parent, v, knot, std::move(s), gain};
          };
          consider(children, signs);
          if (slots == 1 && children.size() == 2) {
            consider({children[0]}, {signs[0]});
            consider({children[1]}, {signs[1]});
          }
        }
      }
    }
    if (!best || !made_progress(model.sse, model.sse - best->gain, config.tolerance, energy)) break;

    auto nodes = model.nodes;
    auto grown = tree;
    for (int sign : best->signs) {
      grown.push_back(AhhTreeNode{best->parent, {sign, best->variable, best->knot}, false});
      nodes.push_back(grown.size() - 1);
    }
    Model trial = refit(x, y, grown, nodes, config.ridge);
    if (!made_progress(model.sse, trial.sse, config.tolerance, energy)) break;
    tree = std::move(grown);
    model = std::move(trial);
    record("add");
  }

  const Matrix& xv = split.validation.inputs();
  const Vector& yv = split.validation.targets();
  double current = sse_on(xv, yv, tree, model);
  while (model.nodes.size() > 1) {
    std::optional<Model> best;
    double best_val = current;
    for (std::size_t k = 1; k < model.nodes.size(); ++k) {
      auto nodes = model.nodes;
      nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(k));
      Model trial = refit(x, y, tree, nodes, config.ridge);
      const double val = sse_on(xv, yv, tree, trial);
      if (val < best_val) {
        best_val = val;
        best = std::move(trial);
      }
    }
    if (!best) break;
    for (std::size_t node : model.nodes) {
      if (std::find(best->nodes.begin(), best->nodes.end(), node) == best->nodes.end()) {
        tree[node].pruned = true;
      }
    }
    model = std::move(*best);
    current = best_val;
    record("prune");
  }

  result.model = to_model(tree, model, n);
  result.tree = std::move(tree);
  return result;
}

}  // namespace pwlnn
