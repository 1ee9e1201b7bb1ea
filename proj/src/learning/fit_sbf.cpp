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

#include "pwlnn/learning/fit_sbf.hpp"

#include <cmath>

#include "pwlnn/learning/least_squares.hpp"

namespace pwlnn {

namespace {

Vector sbf_column(const Matrix& x, const Vector& gamma, const Vector& center) {
  Vector c(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) c[i] = SbfModel::basis_value(gamma, center, x.row(i).transpose());
  return c;
}

struct State {
  std::vector<SbfModel::Basis> bases;
  Matrix design;
  Vector weights;
  double sse = 0.0;
};

State refit(const Vector& y, std::vector<SbfModel::Basis> bases, Matrix design, double ridge) {
  State s{std::move(bases), std::move(design), Vector(), 0.0};
  s.weights = least_squares(s.design, y, ridge);
  s.sse = sum_squared_error(s.design, s.weights, y);
  return s;
}

Matrix with_column(const Matrix& d, const Vector& c) {
  Matrix out(c.size(), d.cols() + 1);
  out.leftCols(d.cols()) = d;
  out.col(d.cols()) = c;
  return out;
}

SbfModel to_model(const State& s, std::size_t n) {
  auto bases = s.bases;
  for (std::size_t k = 0; k < bases.size(); ++k) bases[k].weight = s.weights[static_cast<Eigen::Index>(k)];
  return SbfModel(n, std::move(bases));
}

double sse_on(const SbfModel& m, const Dataset& data) {
  double sse = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = evaluate(m, data.point(i)) - data.targets()[static_cast<Eigen::Index>(i)];
    sse += e * e;
  }
  return sse;
}

}  // namespace

std::vector<double> sbf_gamma_grid() {
  std::vector<double> grid;
  for (int e = -3; e <= 3; ++e) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

SbfFit fit_sbf(const Dataset& data, const FitConfig& config) {
  config.validate();
  const DataSplit split = split_dataset(data, config.validation_fraction, config.seed);
  const std::size_t n = data.dimension();
  const auto ni = static_cast<Eigen::Index>(n);
  const Matrix& x = split.train.inputs();
  const Vector& y = split.train.targets();
  const double scale = std::max(1.0, y.squaredNorm());
  const auto grid = sbf_gamma_grid();

  State state{{}, Matrix(x.rows(), 0), Vector(0), y.squaredNorm()};
  SbfFit result{SbfModel(n, {}), FitTrace{}};
  result.trace.train_size = split.train.size();
  result.trace.validation_size = split.shared ? 0 : split.validation.size();
  auto record = [&](const char* action) {
    result.model = to_model(state, n);
    result.trace.add(state.bases.size(), state.sse, sse_on(result.model, split.validation), action);
  };
  record("empty");

  for (std::size_t round = 1; round <= config.max_terms; ++round) {
    const Vector residual = state.bases.empty() ? y : Vector(y - state.design * state.weights);
    Eigen::Index peak = 0;
    const double largest = residual.cwiseAbs().maxCoeff(&peak);
    if (largest <= 1e-12 * std::sqrt(scale)) {
      record("exact");
      break;
    }
    const Vector center = x.row(peak).transpose();
    Vector gamma = Vector::Ones(ni);
    std::optional<State> best;
    auto try_gamma = [&](const Vector& g) {
      auto bases = state.bases;
      bases.push_back({0.0, g, center});
      State trial = refit(y, std::move(bases), with_column(state.design, sbf_column(x, g, center)),
                          config.ridge);
      if (!best || trial.sse < best->sse) {
        best = std::move(trial);
        return true;
      }
      return false;
    };
    try_gamma(gamma);
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (Eigen::Index i = 0; i < ni; ++i) {
        for (double value : grid) {
          Vector g = gamma;
          g[i] = value;
          if (g == gamma) continue;
          if (try_gamma(g)) gamma = g;
        }
      }
    }
    if (!made_progress(state.sse, best->sse, config.tolerance, scale)) {
      record("stop");
      break;
    }
    state = std::move(*best);
    record("add");
  }
  result.model = to_model(state, n);
  return result;
}

}  // namespace pwlnn
