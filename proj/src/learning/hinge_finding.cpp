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

#include "pwlnn/learning/hinge_finding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pwlnn/learning/least_squares.hpp"

namespace pwlnn {

namespace {

Matrix augment(const Matrix& x) {
  Matrix a(x.rows(), x.cols() + 1);
  a.leftCols(x.cols()) = x;
  a.col(x.cols()).setOnes();
  return a;
}

Matrix select_rows(const Matrix& m, const std::vector<bool>& keep, bool value) {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] == value) rows.push_back(static_cast<Eigen::Index>(i));
  }
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

Vector select_entries(const Vector& v, const std::vector<bool>& keep, bool value) {
  std::vector<double> out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] == value) out.push_back(v[static_cast<Eigen::Index>(i)]);
  }
  return Eigen::Map<Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

std::vector<bool> membership(const Matrix& xa, const Vector& direction) {
  std::vector<bool> positive(static_cast<std::size_t>(xa.rows()));
  for (Eigen::Index i = 0; i < xa.rows(); ++i) {
    positive[static_cast<std::size_t>(i)] = ordered_dot(xa.row(i).transpose(), direction) > 0.0;
  }
  return positive;
}

double hinge_sse(const Matrix& xa, const Vector& y, const Vector& plus, const Vector& minus) {
  const Vector a = xa * plus;
  const Vector b = xa * minus;
  return (a.cwiseMax(b) - y).squaredNorm();
}

// One alternation run from a starting membership. A side that shrinks below
// n + 1 samples ends the run with the last fitted pair; nullopt when the
// starting split is already too small.
std::optional<HingeFit> alternate(const Matrix& xa, const Vector& y, std::vector<bool> positive,
                                  const FitConfig& config) {
  const auto need = static_cast<std::size_t>(xa.cols());
  HingeFit fit;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    const auto count = static_cast<std::size_t>(std::count(positive.begin(), positive.end(), true));
    if (count < need || positive.size() - count < need) {
      if (it == 0) return std::nullopt;
      break;
    }
    fit.alpha_plus = least_squares(select_rows(xa, positive, true), select_entries(y, positive, true),
                                   config.ridge);
    fit.alpha_minus = least_squares(select_rows(xa, positive, false),
                                    select_entries(y, positive, false), config.ridge);
    fit.iterations = it + 1;
    const Vector delta = fit.direction();
    const double size = delta.lpNorm<Eigen::Infinity>();
    if (size <= 1e-10 * (1.0 + fit.alpha_plus.lpNorm<Eigen::Infinity>())) {
      fit.converged = true;
      break;
    }
    auto next = membership(xa, delta);
    if (next == positive) {
      fit.converged = true;
      break;
    }
    fit.positive = positive;
    positive = std::move(next);
  }
  if (fit.converged) fit.positive = positive;
  fit.sse = hinge_sse(xa, y, fit.alpha_plus, fit.alpha_minus);
  return fit;
}

bool better(const std::optional<HingeFit>& candidate, const std::optional<HingeFit>& best) {
  return candidate && (!best || candidate->sse < best->sse);
}

}  // namespace

double HingeFit::operator()(const Vector& x) const {
  Vector xa(x.size() + 1);
  xa.head(x.size()) = x;
  xa[x.size()] = 1.0;
  return std::max(ordered_dot(alpha_plus, xa), ordered_dot(alpha_minus, xa));
}

HingeFit find_hinge(const Matrix& x, const Vector& y, const FitConfig& config,
                    std::optional<Vector> initial_direction) {
  require_dimension(static_cast<std::size_t>(x.rows()), static_cast<std::size_t>(y.size()),
                    "hinge finding targets");
  const Matrix xa = augment(x);
  std::optional<HingeFit> best;
  if (initial_direction) {
    require_dimension(static_cast<std::size_t>(xa.cols()),
                      static_cast<std::size_t>(initial_direction->size()), "hinge direction");
    best = alternate(xa, y, membership(xa, *initial_direction), config);
    if (best) return *best;
  } else {
    const Vector theta = least_squares(xa, y, config.ridge);
    const Vector residual = y - xa * theta;
    std::vector<bool> positive(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) positive[static_cast<std::size_t>(i)] = residual[i] > 0.0;
    best = alternate(xa, y, positive, config);
  }

  auto split_at = [&](const Vector& projection, double quantile) {
    std::vector<double> sorted(projection.data(), projection.data() + projection.size());
    std::sort(sorted.begin(), sorted.end());
    const double threshold =
        sorted[static_cast<std::size_t>(quantile * static_cast<double>(sorted.size() - 1))];
    std::vector<bool> positive(static_cast<std::size_t>(projection.size()));
    for (Eigen::Index i = 0; i < projection.size(); ++i) {
      positive[static_cast<std::size_t>(i)] = projection[i] > threshold;
    }
    auto run = alternate(xa, y, positive, config);
    if (better(run, best)) best = std::move(run);
  };
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (int q = 1; q <= 9; ++q) split_at(x.col(j), 0.1 * q);
  }
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.1, 0.9);
  for (std::size_t r = 0; r < config.restarts; ++r) {
    Vector v(x.cols());
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = normal(rng);
    split_at(x * v, uniform(rng));
  }
  if (!best) {
    throw DegenerateSplit("hinge finding left a side with fewer than " +
                          std::to_string(xa.cols()) + " samples after " +
                          std::to_string(config.restarts) + " restarts");
  }
  return *best;
}

namespace {

struct HhState {
  std::vector<Vector> directions;
  Vector theta;
  double sse = 0.0;
};

Matrix hh_design(const Matrix& xa, const std::vector<Vector>& directions) {
  Matrix d(xa.rows(), xa.cols() + static_cast<Eigen::Index>(directions.size()));
  d.leftCols(xa.cols()) = xa;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    d.col(xa.cols() + static_cast<Eigen::Index>(k)) = (xa * directions[k]).cwiseMax(0.0);
  }
  return d;
}

HhState refit(const Matrix& xa, const Vector& y, std::vector<Vector> directions, double ridge) {
  const Matrix d = hh_design(xa, directions);
  HhState s{std::move(directions), least_squares(d, y, ridge), 0.0};
  s.sse = sum_squared_error(d, s.theta, y);
  return s;
}

HingeModel to_model(const HhState& s, std::size_t n) {
  const auto ni = static_cast<Eigen::Index>(n);
  AffineFunction linear(s.theta.head(ni), s.theta[ni]);
  std::vector<HingeModel::Hinge> hinges;
  for (std::size_t k = 0; k < s.directions.size(); ++k) {
    hinges.push_back({s.theta[ni + 1 + static_cast<Eigen::Index>(k)],
                      AffineFunction(s.directions[k].head(ni), s.directions[k][ni])});
  }
  return HingeModel(std::move(linear), std::move(hinges));
}

double validation_sse(const HingeModel& model, const Dataset& data) {
  double sse = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = evaluate(model, data.point(i)) - data.targets()[static_cast<Eigen::Index>(i)];
    sse += e * e;
  }
  return sse;
}

// Unit directions for candidate screening: an angle grid in 2-D, the axes,
// pairwise diagonals and seeded random directions otherwise.
std::vector<Vector> candidate_directions(std::size_t n, std::uint64_t seed) {
  const auto ni = static_cast<Eigen::Index>(n);
  std::vector<Vector> dirs;
  if (n == 1) return {Vector::Ones(1)};
  if (n == 2) {
    for (int k = 0; k < 90; ++k) {
      const double angle = std::numbers::pi * k / 90.0;
      Vector v(2);
      v << std::cos(angle), std::sin(angle);
      dirs.push_back(v);
    }
    return dirs;
  }
  for (Eigen::Index i = 0; i < ni; ++i) {
    dirs.push_back(Vector::Unit(ni, i));
    for (Eigen::Index j = i + 1; j < ni; ++j) {
      for (double s : {1.0, -1.0}) {
        Vector v = Vector::Zero(ni);
        v[i] = 1.0;
        v[j] = s;
        dirs.push_back(v / std::sqrt(2.0));
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < 64; ++k) {
    Vector v(ni);
    for (Eigen::Index i = 0; i < ni; ++i) v[i] = normal(rng);
    dirs.push_back(v / v.norm());
  }
  return dirs;
}

// Hinge max{v . x - t, 0} with the largest least-squares gain on the
// residual after projecting out span(q); t ranges over projection quantiles.
std::optional<Vector> screen_hinges(const Matrix& xa, const Matrix& q, const Vector& residual,
                                    std::uint64_t seed) {
  const Eigen::Index n = xa.cols() - 1;
  std::optional<Vector> best;
  double best_gain = 0.0;
  for (const auto& v : candidate_directions(static_cast<std::size_t>(n), seed)) {
    const Vector projection = xa.leftCols(n) * v;
    std::vector<double> sorted(projection.data(), projection.data() + projection.size());
    std::sort(sorted.begin(), sorted.end());
    for (int k = 1; k < 50; ++k) {
      const double t = sorted[static_cast<std::size_t>(0.02 * k * static_cast<double>(sorted.size() - 1))];
      Vector column = (projection.array() - t).max(0.0).matrix();
      column -= q * (q.transpose() * column);
      const double norm = column.squaredNorm();
      if (norm <= 1e-12 * static_cast<double>(column.size())) continue;
      const double c = column.dot(residual);
      const double gain = c * c / norm;
      if (gain > best_gain) {
        best_gain = gain;
        Vector direction(n + 1);
        direction.head(n) = v;
        direction[n] = -t;
        best = direction;
      }
    }
  }
  return best;
}

bool usable(const Vector& direction) {
  return direction.head(direction.size() - 1).lpNorm<Eigen::Infinity>() > 1e-12;
}

}  // namespace

HhFit fit_hh(const Dataset& data, const FitConfig& config) {
  config.validate();
  const DataSplit split = split_dataset(data, config.validation_fraction, config.seed);
  const std::size_t n = data.dimension();
  const Matrix xa = augment(split.train.inputs());
  const Vector& y = split.train.targets();
  const double energy = y.squaredNorm();

  HhFit result{HingeModel(AffineFunction::zero(n), {}), FitTrace{}};
  result.trace.train_size = split.train.size();
  result.trace.validation_size = split.shared ? 0 : split.validation.size();

  HhState state = refit(xa, y, {}, config.ridge);
  auto record = [&](const char* action) {
    result.model = to_model(state, n);
    result.trace.add(state.directions.size(), state.sse, validation_sse(result.model, split.validation),
                     action);
  };
  record("affine");

  FitConfig inner = config;
  for (std::size_t round = 1; round <= config.max_terms; ++round) {
    inner.seed = config.seed + round;
    const Vector residual = y - hh_design(xa, state.directions) * state.theta;
    std::optional<HhState> best;
    auto consider = [&](const Vector& direction) {
      if (!usable(direction)) return;
      auto dirs = state.directions;
      dirs.push_back(direction);
      HhState trial = refit(xa, y, std::move(dirs), config.ridge);
      if (!best || trial.sse < best->sse) best = std::move(trial);
    };
    const Matrix design = hh_design(xa, state.directions);
    const Matrix q = Eigen::HouseholderQR<Matrix>(design).householderQ() *
                     Matrix::Identity(design.rows(), design.cols());
    if (auto screened = screen_hinges(xa, q, residual, inner.seed)) {
      consider(*screened);
      const Vector basis = (xa * *screened).cwiseMax(0.0);
      const double sign = basis.dot(residual) >= 0.0 ? 1.0 : -1.0;
      try {
        consider(find_hinge(xa.leftCols(xa.cols() - 1), sign * residual, inner, *screened).direction());
      } catch (const DegenerateSplit&) {
      }
    }
    for (double sign : {1.0, -1.0}) {
      try {
        consider(find_hinge(xa.leftCols(xa.cols() - 1), sign * residual, inner).direction());
      } catch (const DegenerateSplit&) {
      }
    }
    if (!best) {
      record("skip");
      continue;
    }
    if (!made_progress(state.sse, best->sse, config.tolerance, energy)) {
      record("stop");
      break;
    }
    state = std::move(*best);

    for (std::size_t sweep = 0; sweep < config.backfit_sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < state.directions.size(); ++k) {
        const Eigen::Index col = xa.cols() + static_cast<Eigen::Index>(k);
        const double weight = state.theta[col];
        const Vector basis = (xa * state.directions[k]).cwiseMax(0.0);
        const Vector partial = y - (hh_design(xa, state.directions) * state.theta - weight * basis);
        const double sign = weight >= 0.0 ? 1.0 : -1.0;
        try {
          const HingeFit h =
              find_hinge(xa.leftCols(xa.cols() - 1), sign * partial, inner, state.directions[k]);
          if (!usable(h.direction())) continue;
          auto dirs = state.directions;
          dirs[k] = h.direction();
          HhState trial = refit(xa, y, std::move(dirs), config.ridge);
          if (made_progress(state.sse, trial.sse, config.tolerance, energy)) {
            state = std::move(trial);
            improved = true;
          }
        } catch (const DegenerateSplit&) {
        }
      }
      if (!improved) break;
    }
    record("add");
  }
  result.model = to_model(state, n);
  return result;
}

}  // namespace pwlnn
