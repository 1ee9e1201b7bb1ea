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

// One [PASS]/[FAIL] line per acceptance criterion. Exit status is the number
// of failures.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "pwlnn/cli/commands.hpp"
#include "pwlnn/core/analysis.hpp"
#include "pwlnn/core/conventional_io.hpp"
#include "pwlnn/dnn/backprop.hpp"
#include "pwlnn/dnn/regions.hpp"
#include "pwlnn/dnn/training.hpp"
#include "pwlnn/learning/fit_ahh.hpp"
#include "pwlnn/learning/fit_sbf.hpp"
#include "pwlnn/learning/hinge_finding.hpp"
#include "pwlnn/repr/model_io.hpp"
#include "pwlnn/transforms/cplr_builder.hpp"
#include "pwlnn/transforms/equivalence.hpp"
#include "pwlnn/transforms/lattice_builder.hpp"
#include "pwlnn/transforms/to_dc.hpp"
#include "support.hpp"

using namespace pwlnn;
using testing::vec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << " failed: " << what << ';';
    }
  }
};

template <class Reader>
auto load(const std::string& name, Reader read) {
  std::istringstream in(testing::read_text(name));
  return read(in);
}

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

template <class F>
double grid_rmse(const Dataset& data, F&& f) {
  Vector r(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    r[static_cast<Eigen::Index>(i)] = f(data.point(i)) - data.targets()[static_cast<Eigen::Index>(i)];
  }
  return rmse(r);
}

void worked_examples(Outcome& o) {
  const auto c = load("three_piece.cplr", read_cplr);
  for (auto [x, fx] : {std::pair{-2.0, 0.0}, {0.0, 0.0}, {3.0, 1.0}}) {
    const double got = evaluate(c, vec({x}));
    o.expect(got == fx && got == testing::three_piece(x), "cplr at " + std::to_string(x));
  }
  const auto nested = load("ridge_nested.pwl", read_nested_cplr);
  const auto ghh = load("ridge_ghh.pwl", read_ghh);
  double worst = 0.0;
  for (const auto& x : grid_points(Box::cube(2, -2, 2), 101)) {
    worst = std::max(worst, std::abs(evaluate(nested, x) - evaluate(ghh, x)));
  }
  o.expect(worst == 0.0, "nested vs ghh deviation");
  o.detail << " nested-vs-ghh max deviation " << worst << ';';
  o.expect(evaluate(nested, vec({0, 0})) == 0.0 && evaluate(ghh, vec({0, 0})) == 0.0, "value at (0,0)");
  o.expect(evaluate(nested, vec({1, 1})) == 20.0 && evaluate(ghh, vec({1, 1})) == 20.0, "value at (1,1)");
  const auto l = load("five_piece_lattice.pwl", read_lattice);
  o.expect(evaluate(l, vec({2.5})) == 2.0, "lattice f(2.5)");
  o.expect(evaluate(l, vec({0})) == 0.5, "lattice f(0)");
  o.expect(evaluate(l, vec({5})) == 0.5, "lattice f(5)");
}

void consistent_variation(Outcome& o) {
  const auto plane = check_consistent_variation(load("abs_plane.pwl", read_conventional));
  o.expect(plane.representable, "abs-plane representable");
  const auto ridge = check_consistent_variation(load("ridge.pwl", read_conventional));
  o.expect(!ridge.representable, "ridge not representable");
}

void lattice_construction(Outcome& o) {
  const auto m = load("five_piece.pwl", read_conventional);
  const auto l = lattice_from_conventional(m);
  const std::vector<std::vector<std::size_t>> printed = {{1, 3, 4, 5}, {2, 3, 4, 5}, {2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 5}};
  std::vector<std::vector<std::size_t>> got;
  for (auto s : l.selections()) {
    for (auto& i : s) ++i;
    got.push_back(s);
  }
  o.expect(got == printed, "S-sets");
  std::size_t mismatches = 0;
  for (int k = 0; k <= 1000; ++k) {
    const Vector x = vec({5.0 * k / 1000.0});
    mismatches += evaluate(l, x) != m(x) || m(x) != testing::five_piece(x[0]);
  }
  o.expect(mismatches == 0, "grid agreement");
}

struct Expr {
  int op = 0;  // 0 leaf, 1 sum, 2 negate, 3 max, 4 min, 5 abs, 6 scale
  AffineFunction leaf;
  double factor = 1.0;
  std::unique_ptr<Expr> a, b;

  double value(const Vector& x) const {
    switch (op) {
      case 1: return a->value(x) + b->value(x);
      case 2: return -a->value(x);
      case 3: return std::max(a->value(x), b->value(x));
      case 4: return std::min(a->value(x), b->value(x));
      case 5: return std::abs(a->value(x));
      case 6: return factor * a->value(x);
      default: return leaf(x);
    }
  }
  DcForm dc() const {
    switch (op) {
      case 1: return dc_sum(a->dc(), b->dc());
      case 2: return dc_negate(a->dc());
      case 3: return dc_max(a->dc(), b->dc());
      case 4: return dc_min(a->dc(), b->dc());
      case 5: return dc_abs(a->dc());
      case 6: return dc_scale(a->dc(), factor);
      default: return DcForm::affine(leaf);
    }
  }
};

std::unique_ptr<Expr> random_tree(std::mt19937_64& rng, std::size_t n, int depth) {
  auto e = std::make_unique<Expr>();
  std::uniform_int_distribution<int> coef(-5, 5), pick(0, 6);
  const int op = depth == 0 ? 0 : pick(rng);
  if (op == 0) {
    Vector j(static_cast<Eigen::Index>(n));
    for (auto& v : j) v = coef(rng);
    e->leaf = AffineFunction(j, coef(rng));
    return e;
  }
  e->op = op;
  e->a = random_tree(rng, n, depth - 1);
  if (op == 1 || op == 3 || op == 4) e->b = random_tree(rng, n, depth - 1);
  if (op == 6) e->factor = std::uniform_int_distribution<int>(-3, 3)(rng);
  return e;
}

void dc_property(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(1, 3), coord(-64, 64);
  std::size_t mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(dim(rng));
    const auto tree = random_tree(rng, n, 4);
    const DcForm f = tree->dc();
    const GhhModel g = ghh_from_dc(f);
    for (int i = 0; i < 1000; ++i) {
      Vector x(static_cast<Eigen::Index>(n));
      for (auto& v : x) v = coord(rng) / 16.0;
      const double direct = tree->value(x);
      mismatches += evaluate(f, x) != direct || evaluate(g, x) != direct;
    }
  }
  o.expect(mismatches == 0, "dc/ghh pointwise equality");
  o.detail << " mismatches " << mismatches << " of 200000;";
}

void hinge_finding(Outcome& o) {
  FitConfig cfg;
  auto truth = [](const Vector& x) { return std::max(x[0] + x[1] - 1.0, 0.0); };
  const Dataset plane = grid_dataset(2, 0, 1, 41, truth);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, 0.01);
  Vector y = plane.targets();
  for (auto& v : y) v += noise(rng);
  const HingeFit h = find_hinge(plane.inputs(), y, cfg);
  const double noisy = grid_rmse(plane, [&](const Vector& x) { return h(x); });
  o.expect(noisy <= 0.02 && h.iterations <= 50, "noisy 2-D hinge");
  const Dataset relu = grid_dataset(1, -1, 1, 201, [](const Vector& x) { return std::max(x[0], 0.0); });
  const HingeFit r = find_hinge(relu.inputs(), relu.targets(), cfg);
  const double clean = grid_rmse(relu, [&](const Vector& x) { return r(x); });
  o.expect(clean <= 1e-8, "noiseless 1-D hinge");
  o.detail << " 2-D rmse " << noisy << " in " << h.iterations << " alternations; 1-D rmse " << clean << ';';
}

double quantile_step(const Dataset& data, std::size_t v) {
  std::vector<double> col(data.inputs().col(static_cast<Eigen::Index>(v)).data(),
                          data.inputs().col(static_cast<Eigen::Index>(v)).data() + data.size());
  const auto k = knot_candidates(col);
  double step = 0.0;
  for (std::size_t i = 1; i < k.size(); ++i) step = std::max(step, k[i] - k[i - 1]);
  return step;
}

void ahh_recovery(Outcome& o) {
  auto target = [](const Vector& x) {
    const double a = std::max(0.0, x[1] - 0.3), b = std::max(0.0, 0.6 - x[0]);
    return a + b + std::min(a, b);
  };
  const Dataset data = grid_dataset(2, 0, 1, 41, target);
  FitConfig cfg;
  cfg.max_terms = 8;
  const AhhFit f = fit_ahh(data, cfg);
  const double fit = grid_rmse(data, [&](const Vector& x) { return evaluate(f.model, x); });
  o.expect(fit <= 1e-3, "rmse");
  bool k2 = false, k1 = false;
  for (const auto& b : f.model.bases()) {
    for (const auto& fac : b.factors) {
      k2 |= fac.variable == 1 && std::abs(fac.knot - 0.3) <= quantile_step(data, 1);
      k1 |= fac.variable == 0 && std::abs(fac.knot - 0.6) <= quantile_step(data, 0);
    }
  }
  o.expect(k1 && k2, "knots near 0.6 (x1) and 0.3 (x2)");
  o.detail << " rmse " << fit << ", bases " << f.model.bases().size() << ';';

  cfg.max_terms = 10;
  cfg.validation_fraction = 0.3;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.05);
  Vector y = data.targets();
  for (auto& v : y) v += noise(rng);
  const AhhFit p = fit_ahh(Dataset(data.inputs(), y), cfg);
  double last = std::numeric_limits<double>::infinity();
  std::size_t prunes = 0;
  for (const auto& r : p.trace.records) {
    if (r.action == "prune") {
      o.expect(r.validation_sse <= last, "pruning raised validation sse");
      ++prunes;
    }
    last = r.validation_sse;
  }
  o.detail << " pruning steps " << prunes << ';';
}

void sbf_recovery(Outcome& o) {
  auto planted = [](const Vector& x) {
    return 3.0 * std::max(0.0, 1.0 - 2.0 * std::abs(x[0] - 0.5) - 2.0 * std::abs(x[1] - 0.5));
  };
  const Dataset data = grid_dataset(2, 0, 1, 41, planted);
  FitConfig cfg;
  cfg.max_terms = 4;
  const SbfFit f = fit_sbf(data, cfg);
  if (f.model.bases().empty()) {
    o.expect(false, "no basis");
    return;
  }
  const Vector c = f.model.bases().front().center;
  o.expect(max_abs(c - vec({0.5, 0.5})) <= 0.025, "center within one grid cell");
  const double fit = grid_rmse(data, [&](const Vector& x) { return evaluate(f.model, x); });
  o.expect(fit <= 0.05, "rmse");
  o.detail << " center (" << c[0] << ", " << c[1] << "), rmse " << fit << ';';
}

void gradient_check(Outcome& o) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  Network net = Network::zeros(2, {8, 8}, {Activation::relu(), Activation::relu()});
  init_parameters(net, InitScheme::HeNormal, 8);
  Vector theta = net.parameters();
  for (auto& v : theta) v += 0.1 * u(rng);
  net.set_parameters(theta);
  double worst = 0.0;
  int points = 0;
  while (points < 20) {
    const Vector x = vec({2 * u(rng), 2 * u(rng)});
    ForwardCache cache;
    forward(net, x, &cache);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& z : cache.pre) margin = std::min(margin, z.cwiseAbs().minCoeff());
    if (margin < 1e-3) continue;
    ++points;
    const Vector y = vec({u(rng)});
    const Vector analytic = loss_gradient(net, x, y).parameters;
    Network probe = net;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      Vector t = theta;
      t[i] += 1e-6;
      probe.set_parameters(t);
      const double up = squared_loss(forward(probe, x), y);
      t[i] = theta[i] - 1e-6;
      probe.set_parameters(t);
      const double down = squared_loss(forward(probe, x), y);
      const double numeric = (up - down) / 2e-6;
      worst = std::max(worst, std::abs(numeric - analytic[i]) /
                                  std::max({std::abs(numeric), std::abs(analytic[i]), 1.0}));
    }
  }
  o.expect(worst <= 1e-5, "relative error");
  o.detail << " worst relative error " << worst << ';';
}

std::size_t brute_force_regions(const Matrix& w, const Vector& b, const Box& box, std::size_t density) {
  std::set<std::vector<bool>> seen;
  for (const auto& x : grid_points(box, density)) {
    const Vector z = w * x + b;
    if ((z.cwiseAbs().array() < 1e-9).any()) continue;
    std::vector<bool> s;
    for (auto v : z) s.push_back(v > 0);
    seen.insert(s);
  }
  return seen.size();
}

void region_analysis(Outcome& o) {
  struct Case {
    Matrix w;
    Vector b;
    std::size_t expected;
  };
  std::vector<Case> cases;
  Matrix w1(5, 1);
  w1 << 1, -1, 2, 1, -0.5;
  cases.push_back({w1, vec({-1.5, 0.25, 1, 2.5, -1}), 6});
  Matrix w2(3, 2);
  w2 << 1, 0.5, -0.25, 1, 0.75, -1;
  cases.push_back({w2, vec({0.125, -0.25, 0.0625}), 7});
  Matrix w3(4, 2);
  w3 << 1, 0.3, 0.2, 1, 1, -1, 1, 1.7;
  cases.push_back({w3, vec({-0.5, 0.3, 0.2, -0.9}), 11});
  for (const auto& c : cases) {
    const std::size_t n = static_cast<std::size_t>(c.w.cols());
    const std::size_t m = static_cast<std::size_t>(c.w.rows());
    Network net = Network::zeros(n, {m}, {Activation::relu()});
    net.hidden()[0].weights = c.w;
    net.hidden()[0].bias = c.b;
    net.output_weights().setOnes();
    const Box box = Box::cube(n, -4, 4);
    const auto count = count_regions(net, box, RegionMethod::PatternEnumeration).count;
    const auto oracle = brute_force_regions(c.w, c.b, box, n == 1 ? 100001 : 1201);
    const auto bound = zaslavsky_bound(m, n);
    o.expect(count == c.expected && oracle == c.expected && count <= bound,
             "(n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    o.detail << " (" << n << "," << m << "): count " << count << ", oracle " << oracle << ", bound " << bound << ';';
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("pwlnn-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "ridge.csv");
    csv.precision(17);
    csv << "x1,x2,y\n";
    for (const auto& x : grid_points(Box::cube(2, 0, 1), 11)) {
      csv << x[0] << ',' << x[1] << ',' << testing::ridge(x[0], x[1]) << '\n';
    }
  }
  for (const std::string kind : {"hh", "ahh", "sbf", "dnn"}) {
    for (const char* run : {"a", "b"}) {
      std::vector<std::string> args = {"fit", "--data", (dir / "ridge.csv").string(), "--kind", kind,
                                       "--out", (dir / (kind + run)).string(), "--seed", "7",
                                       "--validation-fraction", "0.2"};
      if (kind == "dnn") args.insert(args.end(), {"--epochs", "50"});
      std::ostringstream out, err;
      o.expect(run_cli(args, out, err) == 0, kind + " exit code");
    }
    o.expect(slurp(dir / (kind + "a")) == slurp(dir / (kind + "b")), kind + " model bytes");
    o.expect(slurp(dir / (kind + "a.trace.csv")) == slurp(dir / (kind + "b.trace.csv")), kind + " trace bytes");
  }
  fs::remove_all(dir);
}

void desk_scale(Outcome& o) {
  const Dataset data = grid_dataset(2, 0, 1, 41, [](const Vector& x) { return testing::ridge(x[0], x[1]); });
  FitConfig cfg;
  cfg.max_terms = 8;
  const HhFit hh = fit_hh(data, cfg);
  const double hh_rmse = grid_rmse(data, [&](const Vector& x) { return evaluate(hh.model, x); });
  Network net = Network::zeros(2, {16, 16}, {Activation::relu(), Activation::relu()});
  init_parameters(net, InitScheme::HeNormal, 1);
  TrainConfig tc;
  tc.epochs = 2000;
  const TrainResult sgd = train_sgd(net, data, tc);
  const double sgd_rmse = network_rmse(sgd.net, data);
  o.expect(hh_rmse <= 1.0, "fit_hh rmse");
  o.expect(sgd_rmse <= 1.0, "sgd rmse");
  o.detail << " fit_hh rmse " << hh_rmse << "; sgd rmse " << sgd_rmse << " (final epoch loss "
           << sgd.loss_curve.back() << ");";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    void (*check)(Outcome&);
    double limit_seconds;  // 0: no limit
  };
  const Criterion criteria[] = {
      {1, "worked-example golden suite", worked_examples, 1},
      {2, "consistent-variation verdicts", consistent_variation, 1},
      {3, "lattice construction", lattice_construction, 0},
      {4, "dc property suite", dc_property, 30},
      {5, "hinge-finding recovery", hinge_finding, 0},
      {6, "ahh tree-search recovery", ahh_recovery, 0},
      {7, "sbf structured decision", sbf_recovery, 0},
      {8, "dnn gradient check", gradient_check, 5},
      {9, "region analysis", region_analysis, 30},
      {10, "fit determinism", determinism, 0},
      {11, "desk-scale approximation", desk_scale, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.check(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " threw: " << e.what() << ';';
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      o.ok = false;
      o.detail << " over time limit " << c.limit_seconds << " s;";
    }
    failures += !o.ok;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << std::fixed
              << std::setprecision(3) << seconds << " s)" << std::defaultfloat << std::setprecision(6)
              << o.detail.str() << '\n';
  }
  return failures;
}
