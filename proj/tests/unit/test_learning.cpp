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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "pwlnn/learning/dataset.hpp"
#include "pwlnn/learning/fit.hpp"
#include "pwlnn/learning/fit_ahh.hpp"
#include "pwlnn/learning/fit_sbf.hpp"
#include "pwlnn/learning/hinge_finding.hpp"
#include "pwlnn/learning/least_squares.hpp"
#include "support.hpp"

using namespace pwlnn;
using testing::vec;

namespace {

template <class Model>
double model_rmse(const Model& m, const Dataset& data) {
  Vector r(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    r[static_cast<Eigen::Index>(i)] = evaluate(m, data.point(i)) - data.targets()[static_cast<Eigen::Index>(i)];
  }
  return rmse(r);
}

void check_monotone(const FitTrace& trace) {
  double last = std::numeric_limits<double>::infinity();
  for (const auto& r : trace.records) {
    if (r.action != "add") continue;
    CHECK(r.train_sse <= last + 1e-12);
    last = r.train_sse;
  }
}

double planted_ahh(const Vector& x) { return std::max(0.0, x[1] - 0.3) + std::max(0.0, 0.6 - x[0]); }

}  // namespace

TEST_CASE("least squares examples") {
  Matrix x(2, 1);
  x << 1, 2;
  CHECK(least_squares(x, vec({2, 4}), 0.0)[0] == doctest::Approx(2.0).epsilon(1e-15));
  const Vector t = least_squares(Matrix::Identity(3, 3), vec({1, 2, 3}), 0.0);
  CHECK((t - vec({1, 2, 3})).cwiseAbs().maxCoeff() <= 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix a(50, 3);
  for (auto& v : a.reshaped()) v = u(rng);
  const Vector planted = vec({0.5, -2.0, 3.25});
  const Vector y = a * planted;
  CHECK((least_squares(a, y, 0.0) - planted).cwiseAbs().maxCoeff() <= 1e-10);

  const Vector noisy = y + Vector::NullaryExpr(50, [&] { return u(rng); });
  for (double ridge : {0.0, 1e-8, 0.5}) {
    const Vector th = least_squares(a, noisy, ridge);
    const Vector normal = a.transpose() * (a * th - noisy) + ridge * th;
    CHECK(normal.norm() <= 1e-8 * (a.transpose() * noisy).norm());
  }

  Matrix deficient(3, 2);
  deficient << 1, 2, 2, 4, 3, 6;
  CHECK_THROWS_AS(least_squares(deficient, vec({1, 2, 3}), 0.0), SingularSystem);
  CHECK_NOTHROW(least_squares(deficient, vec({1, 2, 3}), 1e-8));
}

TEST_CASE("hinge finding recovers planted hinges") {
  FitConfig cfg;
  const Dataset relu = grid_dataset(1, -1, 1, 201, [](const Vector& x) { return std::max(x[0], 0.0); });
  const HingeFit h = find_hinge(relu.inputs(), relu.targets(), cfg);
  Vector r(201);
  for (Eigen::Index i = 0; i < 201; ++i) r[i] = h(relu.point(static_cast<std::size_t>(i))) - relu.targets()[i];
  CHECK(rmse(r) <= 1e-8);
  CHECK(h.converged);

  const HingeFit again = find_hinge(relu.inputs(), relu.targets(), cfg, h.direction());
  CHECK((again.alpha_plus - h.alpha_plus).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((again.alpha_minus - h.alpha_minus).cwiseAbs().maxCoeff() <= 1e-12);

  const Dataset line = grid_dataset(1, -1, 1, 201, [](const Vector& x) { return 2 * x[0] + 1; });
  const HingeFit flat = find_hinge(line.inputs(), line.targets(), cfg);
  for (Eigen::Index i = 0; i < 201; ++i) r[i] = flat(line.point(static_cast<std::size_t>(i))) - line.targets()[i];
  CHECK(rmse(r) <= 1e-8);

  auto truth = [](const Vector& x) { return std::max(x[0] + x[1] - 1.0, 0.0); };
  Dataset plane = grid_dataset(2, 0, 1, 41, truth);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.01);
  Vector y = plane.targets();
  for (auto& v : y) v += noise(rng);
  const HingeFit h2 = find_hinge(plane.inputs(), y, cfg);
  Vector r2(static_cast<Eigen::Index>(plane.size()));
  for (std::size_t i = 0; i < plane.size(); ++i) r2[static_cast<Eigen::Index>(i)] = h2(plane.point(i)) - truth(plane.point(i));
  CHECK(rmse(r2) <= 0.02);
  CHECK(h2.iterations <= 50);

  Matrix tiny(3, 1);
  tiny << 0, 1, 2;
  CHECK_THROWS_AS(find_hinge(tiny, vec({0, 1, 0}), cfg), DegenerateSplit);
}

TEST_CASE("fit_hh") {
  FitConfig cfg;
  cfg.max_terms = 2;
  const Dataset three = grid_dataset(1, -3, 3, 601, [](const Vector& x) { return testing::three_piece(x[0]); });
  const HhFit f = fit_hh(three, cfg);
  CHECK(model_rmse(f.model, three) <= 1e-6);
  check_monotone(f.trace);

  cfg.max_terms = 5;
  const Dataset flat = grid_dataset(2, 0, 1, 11, [](const Vector& x) { return 1.5 * x[0] - 2 * x[1] + 0.25; });
  const HhFit g = fit_hh(flat, cfg);
  CHECK(g.model.hinges().empty());
  REQUIRE(g.trace.records.size() == 2);
  CHECK(g.trace.records.back().action == "stop");
  CHECK(model_rmse(g.model, flat) <= 1e-8);

  cfg.max_terms = 8;
  const Dataset ridge = grid_dataset(2, 0, 1, 41, [](const Vector& x) { return testing::ridge(x[0], x[1]); });
  const HhFit h = fit_hh(ridge, cfg);
  MESSAGE("fit_hh ridge rmse " << model_rmse(h.model, ridge));
  CHECK(model_rmse(h.model, ridge) <= 0.5);
  CHECK(h.model.hinges().size() <= 8);
  check_monotone(h.trace);
}

TEST_CASE("fit_ahh recovers planted hinges") {
  FitConfig cfg;
  cfg.max_terms = 6;
  const Dataset data = grid_dataset(2, 0, 1, 41, planted_ahh);
  const AhhFit f = fit_ahh(data, cfg);
  CHECK(model_rmse(f.model, data) <= 1e-3);
  bool knot_x2 = false, knot_x1 = false;
  for (const auto& node : f.tree) {
    if (&node == &f.tree.front()) continue;
    if (node.factor.variable == 1 && std::abs(node.factor.knot - 0.3) <= 0.05) knot_x2 = true;
    if (node.factor.variable == 0 && std::abs(node.factor.knot - 0.6) <= 0.05) knot_x1 = true;
  }
  CHECK(knot_x2);
  CHECK(knot_x1);
  check_monotone(f.trace);
  CHECK_FALSE(describe_tree(f.tree).empty());

  const Dataset constant = grid_dataset(2, 0, 1, 11, [](const Vector&) { return 5.0; });
  const AhhFit c = fit_ahh(constant, cfg);
  CHECK(c.model.bases().empty());
  CHECK(testing::near(c.model.constant(), 5.0, 1e-8));

  auto interaction = [](const Vector& x) { return std::min(std::max(0.0, x[1] - 0.3), std::max(0.0, 0.6 - x[0])); };
  const Dataset inter = grid_dataset(2, 0, 1, 41, interaction);
  const AhhFit i = fit_ahh(inter, cfg);
  bool two_factors = false;
  for (const auto& b : i.model.bases()) two_factors |= b.factors.size() >= 2;
  CHECK(two_factors);
}

TEST_CASE("fit_ahh pruning never raises validation SSE") {
  FitConfig cfg;
  cfg.max_terms = 10;
  cfg.validation_fraction = 0.3;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.05);
  Dataset base = grid_dataset(2, 0, 1, 21, planted_ahh);
  Vector y = base.targets();
  for (auto& v : y) v += noise(rng);
  const AhhFit f = fit_ahh(Dataset(base.inputs(), y), cfg);
  double last = std::numeric_limits<double>::infinity();
  bool pruning = false;
  for (const auto& r : f.trace.records) {
    if (r.action == "prune") {
      CHECK(r.validation_sse <= last);
      pruning = true;
    }
    last = r.validation_sse;
  }
  MESSAGE("pruning steps present: " << pruning);
  check_monotone(f.trace);
}

TEST_CASE("knot candidates") {
  std::vector<double> v;
  for (int i = 0; i <= 20; ++i) v.push_back(i / 20.0);
  const auto k = knot_candidates(v);
  REQUIRE(k.size() == 19);
  CHECK(k.front() == doctest::Approx(0.05));
  CHECK(k.back() == doctest::Approx(0.95));
  CHECK(knot_candidates({2.0, 2.0, 2.0}).size() == 1);
}

TEST_CASE("fit_sbf") {
  FitConfig cfg;
  cfg.max_terms = 4;
  auto planted = [](const Vector& x) {
    return 3.0 * std::max(0.0, 1.0 - 2.0 * std::abs(x[0] - 0.5) - 2.0 * std::abs(x[1] - 0.5));
  };
  const Dataset data = grid_dataset(2, 0, 1, 41, planted);
  const SbfFit f = fit_sbf(data, cfg);
  REQUIRE_FALSE(f.model.bases().empty());
  const Vector c = f.model.bases().front().center;
  CHECK(std::abs(c[0] - 0.5) <= 0.025);
  CHECK(std::abs(c[1] - 0.5) <= 0.025);
  CHECK(model_rmse(f.model, data) <= 0.05);
  check_monotone(f.trace);

  const Dataset zero = grid_dataset(2, 0, 1, 11, [](const Vector&) { return 0.0; });
  CHECK(fit_sbf(zero, cfg).model.bases().empty());

  cfg.max_terms = 6;
  const Dataset three = grid_dataset(1, -3, 3, 601, [](const Vector& x) { return testing::three_piece(x[0]); });
  const SbfFit t = fit_sbf(three, cfg);
  MESSAGE("fit_sbf three-piece rmse " << model_rmse(t.model, three));
  CHECK(model_rmse(t.model, three) <= 0.05);
  check_monotone(t.trace);

  const auto grid = sbf_gamma_grid();
  REQUIRE(grid.size() == 7);
  CHECK(grid.front() == 0.125);
  CHECK(grid.back() == 8.0);
}

TEST_CASE("fitters are deterministic per seed") {
  FitConfig cfg;
  cfg.max_terms = 4;
  cfg.validation_fraction = 0.2;
  cfg.seed = 9;
  const Dataset data = grid_dataset(2, 0, 1, 17, [](const Vector& x) { return testing::ridge(x[0], x[1]); });
  CHECK(trace_csv(fit_hh(data, cfg).trace) == trace_csv(fit_hh(data, cfg).trace));
  CHECK(trace_csv(fit_ahh(data, cfg).trace) == trace_csv(fit_ahh(data, cfg).trace));
  CHECK(trace_csv(fit_sbf(data, cfg).trace) == trace_csv(fit_sbf(data, cfg).trace));
}

TEST_CASE("data splitting and csv") {
  const auto p = seeded_permutation(10, 4);
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 10; ++i) CHECK(sorted[i] == i);
  CHECK(p == seeded_permutation(10, 4));

  const Dataset data = grid_dataset(1, 0, 1, 10, [](const Vector& x) { return x[0]; });
  const DataSplit s = split_dataset(data, 0.25, 1);
  CHECK(s.validation.size() == 2);
  CHECK(s.train.size() == 8);
  CHECK(split_dataset(data, 0.0, 1).shared);

  std::istringstream csv("x1,x2,y\n1,2,3\n4,5,6\n");
  const Dataset d = read_dataset(csv);
  CHECK(d.size() == 2);
  CHECK(d.dimension() == 2);
  CHECK(d.targets()[1] == 6.0);
  std::istringstream bad("1,2\n3,oops\n");
  CHECK_THROWS_AS(read_dataset(bad), ParseError);

  FitConfig cfg;
  cfg.validation_fraction = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidModel);
}
