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
#include <set>
#include <sstream>

#include "pwlnn/dnn/backprop.hpp"
#include "pwlnn/dnn/network_io.hpp"
#include "pwlnn/dnn/regions.hpp"
#include "pwlnn/dnn/training.hpp"
#include "pwlnn/learning/dataset.hpp"
#include "pwlnn/repr/model_io.hpp"
#include "support.hpp"

using namespace pwlnn;
using testing::vec;

namespace {

Network single_relu(double w, double b, double v, double c) {
  Network net = Network::zeros(1, {1}, {Activation::relu()});
  net.hidden()[0].weights(0, 0) = w;
  net.hidden()[0].bias[0] = b;
  net.output_weights()(0, 0) = v;
  net.output_bias()[0] = c;
  return net;
}

Network one_layer(const Matrix& w, const Vector& b) {
  Network net = Network::zeros(static_cast<std::size_t>(w.cols()), {static_cast<std::size_t>(w.rows())},
                               {Activation::relu()});
  net.hidden()[0].weights = w;
  net.hidden()[0].bias = b;
  net.output_weights().setOnes();
  return net;
}

Network load_net(const std::string& name) {
  std::istringstream in(testing::read_text(name));
  return read_network(in);
}

// Smallest |z - kink| over every hidden unit at x.
double kink_margin(const Network& net, const Vector& x) {
  ForwardCache cache;
  forward(net, x, &cache);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < net.hidden().size(); ++l) {
    const Layer& layer = net.hidden()[l];
    const Vector& z = cache.pre[l];
    if (layer.activation.kind() == ActivationKind::Maxout) {
      const auto k = static_cast<Eigen::Index>(layer.activation.group());
      for (Eigen::Index u = 0; u < z.size() / k; ++u) {
        std::vector<double> g(z.data() + u * k, z.data() + (u + 1) * k);
        std::sort(g.begin(), g.end());
        margin = std::min(margin, g[g.size() - 1] - g[g.size() - 2]);
      }
      continue;
    }
    for (Eigen::Index u = 0; u < z.size(); ++u) {
      const double* p = layer.parameters.row(u).data();
      for (double kink : layer.activation.kinks(p)) margin = std::min(margin, std::abs(z[u] - kink));
    }
  }
  return margin;
}

// Central differences with h = 1e-6 against backward(); returns the worst
// relative error over parameters.
double gradient_error(Network net, const Vector& x, const Vector& y) {
  const Vector analytic = loss_gradient(net, x, y).parameters;
  const Vector theta = net.parameters();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double h = 1e-6;
    Vector t = theta;
    t[i] = theta[i] + h;
    net.set_parameters(t);
    const double up = squared_loss(forward(net, x), y);
    t[i] = theta[i] - h;
    net.set_parameters(t);
    const double down = squared_loss(forward(net, x), y);
    const double numeric = (up - down) / (2 * h);
    const double scale = std::max({std::abs(numeric), std::abs(analytic[i]), 1.0});
    worst = std::max(worst, std::abs(numeric - analytic[i]) / scale);
  }
  return worst;
}

// Distinct on/off sign vectors of a one-layer net over a dense grid.
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

std::uint64_t binomial_sum(std::uint64_t m, std::uint64_t n) {
  std::uint64_t total = 0, c = 1;
  for (std::uint64_t j = 0; j <= std::min(m, n); ++j) {
    total += c;
    c = c * (m - j) / (j + 1);
  }
  return total;
}

Network ghh_as_maxout(const GhhModel& g) {
  std::size_t k = 0;
  for (const auto& t : g.terms()) k = std::max(k, t.affines.size());
  const std::size_t n = g.dimension();
  Network net = Network::zeros(n, {g.terms().size()}, {Activation::maxout(k)});
  Layer& layer = net.hidden()[0];
  for (std::size_t u = 0; u < g.terms().size(); ++u) {
    const auto& affines = g.terms()[u].affines;
    for (std::size_t j = 0; j < k; ++j) {
      const AffineFunction& a = affines[std::min(j, affines.size() - 1)];
      const auto row = static_cast<Eigen::Index>(u * k + j);
      layer.weights.row(row) = a.jacobian().transpose();
      layer.bias[row] = a.bias();
    }
    net.output_weights()(0, static_cast<Eigen::Index>(u)) = g.terms()[u].weight;
  }
  return net;
}

}  // namespace

TEST_CASE("forward examples") {
  const Network net = single_relu(1, 0, 1, 0);
  CHECK(forward_scalar(net, vec({2})) == 2.0);
  CHECK(forward_scalar(net, vec({-2})) == 0.0);

  Network zero = Network::zeros(3, {4, 2}, {Activation::relu(), Activation::relu()});
  zero.output_bias()[0] = 1.25;
  for (const auto& x : grid_points(Box::cube(3, -2, 2), 5)) CHECK(forward_scalar(zero, x) == 1.25);

  const Network three = load_net("three_lines.net");
  const Vector x = vec({0.5, 0.25});
  double expected = 0.0;
  expected += 1 * std::max(0.0, 1 * 0.5 + 0.5 * 0.25 + 0.125);
  expected += 2 * std::max(0.0, -0.25 * 0.5 + 1 * 0.25 - 0.25);
  expected += 3 * std::max(0.0, 0.75 * 0.5 - 1 * 0.25 + 0.0625);
  CHECK(forward_scalar(three, x) == expected);
  CHECK_THROWS_AS(forward(three, vec({1})), DimensionMismatch);
}

TEST_CASE("maxout network realizes the GHH example") {
  std::istringstream in(testing::read_text("ridge_ghh.pwl"));
  const GhhModel g = read_ghh(in);
  const Network net = ghh_as_maxout(g);
  CHECK(forward_scalar(net, vec({1, 1})) == 20.0);
  CHECK(forward_scalar(net, vec({0, 0})) == 0.0);
  for (const auto& x : grid_points(Box::cube(2, -2, 2), 129)) CHECK(forward_scalar(net, x) == evaluate(g, x));

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-4, 4), count(1, 3), dim(1, 3);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(dim(rng));
    std::vector<GhhModel::Term> terms;
    for (int m = 0; m < 2; ++m) {
      GhhModel::Term term{static_cast<double>(coef(rng)), {}};
      for (int j = count(rng); j > 0; --j) {
        Vector jac(static_cast<Eigen::Index>(n));
        for (auto& v : jac) v = coef(rng);
        term.affines.emplace_back(jac, coef(rng));
      }
      terms.push_back(std::move(term));
    }
    const GhhModel random(n, std::move(terms));
    const Network mnet = ghh_as_maxout(random);
    for (const auto& x : grid_points(Box::cube(n, -2, 2), n == 1 ? 129 : (n == 2 ? 33 : 9))) {
      REQUIRE(forward_scalar(mnet, x) == evaluate(random, x));
    }
  }
}

TEST_CASE("activation reductions to ReLU") {
  const std::vector<double> zero(2, 0.0);
  const double p0 = 0.0;
  const Activation srelu = Activation::srelu();
  const auto sp = srelu.default_parameters();
  const Activation apl = Activation::apl(2);
  const std::vector<double> apl_zero(4, 0.0);
  for (int k = -64; k <= 64; ++k) {
    const double z = k / 16.0;
    const double relu = std::max(z, 0.0);
    CHECK(Activation::leaky(0.0).apply(z, nullptr) == relu);
    CHECK(Activation::prelu().apply(z, &p0) == relu);
    CHECK(srelu.apply(z, sp.data()) == relu);
    CHECK(Activation::frelu().apply(z, zero.data()) == relu);
    CHECK(apl.apply(z, apl_zero.data()) == relu);
  }
  for (const char* d : {"relu", "leaky:0.01", "prelu", "srelu", "frelu", "apl:2", "maxout:3"}) {
    CHECK(Activation::parse(d).descriptor() == d);
  }
  CHECK_THROWS_AS(Activation::parse("tanh"), Error);
}

TEST_CASE("activations are continuous piecewise linear") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const Activation& a : {Activation::leaky(0.1), Activation::prelu(), Activation::srelu(), Activation::frelu(),
                              Activation::apl(3)}) {
    std::vector<double> p(a.parameter_count());
    for (auto& v : p) v = u(rng);
    if (a.kind() == ActivationKind::SReLU && p[4] > p[5]) std::swap(p[4], p[5]);
    const auto kinks = a.kinks(p.data());
    for (double k : kinks) {
      CHECK(std::abs(a.apply(k + 1e-9, p.data()) - a.apply(k - 1e-9, p.data())) <= 1e-7);
    }
    for (int i = 0; i < 200; ++i) {
      const double z = 4 * u(rng);
      double slope = 0, intercept = 0;
      a.piece_map(a.piece(z, p.data()), p.data(), slope, intercept);
      CHECK(std::abs(slope * z + intercept - a.apply(z, p.data())) <= 1e-12);
    }
  }
}

TEST_CASE("backpropagation examples") {
  const Network net = single_relu(1, 0, 1, 0);
  const BackwardResult g = loss_gradient(net, vec({2}), vec({0}));
  CHECK(g.loss == 4.0);
  CHECK(g.parameters[0] == 8.0);  // dL/dW
  CHECK(g.parameters[1] == 4.0);  // dL/db
  CHECK(g.parameters[2] == 8.0);  // dL/dv

  const BackwardResult off = loss_gradient(single_relu(1, 0, 1, 0.5), vec({-2}), vec({0}));
  CHECK(off.parameters[0] == 0.0);
  CHECK(off.parameters[1] == 0.0);
  CHECK(off.parameters[2] == 0.0);
  CHECK(off.parameters[3] == 1.0);
}

TEST_CASE("gradients match central finite differences") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  Network net = Network::zeros(2, {8, 8}, {Activation::relu(), Activation::relu()});
  init_parameters(net, InitScheme::HeNormal, 4);
  Vector theta = net.parameters();
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] += 0.1 * u(rng);
  net.set_parameters(theta);
  int checked = 0;
  while (checked < 20) {
    const Vector x = vec({2 * u(rng), 2 * u(rng)});
    if (kink_margin(net, x) < 1e-3) continue;
    CHECK(gradient_error(net, x, vec({u(rng)})) <= 1e-5);
    ++checked;
  }

  for (const Activation& a : {Activation::leaky(0.1), Activation::prelu(), Activation::srelu(), Activation::frelu(),
                              Activation::apl(2), Activation::maxout(3)}) {
    Network small = Network::zeros(2, {4}, {a});
    init_parameters(small, InitScheme::Uniform, 8);
    Vector t = small.parameters();
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] += 0.3 * u(rng);
    small.set_parameters(t);
    int done = 0;
    while (done < 10) {
      const Vector x = vec({2 * u(rng), 2 * u(rng)});
      if (kink_margin(small, x) < 1e-3) continue;
      CHECK_MESSAGE(gradient_error(small, x, vec({u(rng)})) <= 1e-5, a.descriptor());
      ++done;
    }
  }
}

TEST_CASE("non-finite values name the layer") {
  Network net = single_relu(1, 0, 1, 0);
  net.hidden()[0].weights(0, 0) = std::numeric_limits<double>::infinity();
  try {
    loss_gradient(net, vec({1}), vec({0}));
    FAIL("expected NonFiniteValue");
  } catch (const NonFiniteValue& e) {
    CHECK(e.layer() == 1);
  }
}

TEST_CASE("networks are piecewise linear along lines") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  Network net = Network::zeros(2, {8, 8}, {Activation::relu(), Activation::relu()});
  init_parameters(net, InitScheme::HeNormal, 12);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x = vec({u(rng), u(rng)});
    const Vector v = vec({2 * u(rng), 2 * u(rng)});
    std::vector<double> f;
    for (int i = 0; i < 1000; ++i) f.push_back(forward_scalar(net, x + (i / 999.0) * v));
    std::size_t bends = 0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) bends += std::abs(f[i + 1] - 2 * f[i] + f[i - 1]) > 1e-8;
    // A first-layer unit crosses a line once; a second-layer unit at most
    // once per first-layer piece.
    CHECK(bends <= 2 * (8 + 8 * 9));
  }
}

TEST_CASE("activation patterns and local maps") {
  const Network net = single_relu(1, 0, 1, 0);
  const auto on = activation_pattern(net, vec({2}));
  CHECK(on.pattern.str() == "1");
  CHECK(on.map.jacobian(0, 0) == 1.0);
  CHECK(on.map.bias[0] == 0.0);
  const auto off = activation_pattern(net, vec({-2}));
  CHECK(off.pattern.str() == "0");
  CHECK(off.map.jacobian(0, 0) == 0.0);

  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> q(-32, 32);
  Network small = Network::zeros(2, {4}, {Activation::relu()});
  Vector t = small.parameters();
  for (auto& v : t) v = q(rng) / 8.0;
  small.set_parameters(t);
  for (int i = 0; i < 100; ++i) {
    const Vector x = vec({q(rng) / 16.0, q(rng) / 16.0});
    CHECK(activation_pattern(small, x).map(x)[0] == forward_scalar(small, x));
  }

  Network deep = Network::zeros(2, {8, 8}, {Activation::relu(), Activation::leaky(0.125)});
  init_parameters(deep, InitScheme::HeNormal, 3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 100; ++i) {
    const Vector x = vec({u(rng), u(rng)});
    CHECK(testing::near(activation_pattern(deep, x).map(x)[0], forward_scalar(deep, x), 1e-12));
  }
}

TEST_CASE("zaslavsky bound") {
  CHECK(zaslavsky_bound(3, 2) == 7);
  CHECK(zaslavsky_bound(0, 5) == 1);
  CHECK(zaslavsky_bound(5, 1) == 6);
  CHECK(zaslavsky_bound(4, 2) == 11);
  for (std::uint64_t m = 0; m <= 30; ++m) {
    for (std::uint64_t n = 1; n <= 6; ++n) CHECK(zaslavsky_bound(m, n) == binomial_sum(m, n));
  }
  CHECK(zaslavsky_bound(63, 63) == (std::uint64_t{1} << 63));
  CHECK_THROWS_AS(zaslavsky_bound(64, 64), BudgetExceeded);
}

TEST_CASE("region counts for one-hidden-layer nets") {
  struct Case {
    Matrix w;
    Vector b;
    Box box;
    std::size_t expected;
  };
  std::vector<Case> cases;
  {
    Matrix w(5, 1);
    w << 1, -1, 2, 1, -0.5;
    cases.push_back({w, vec({-1.5, 0.25, 1, 2.5, -1}), Box::cube(1, -4, 4), 6});
  }
  {
    const Network three = load_net("three_lines.net");
    cases.push_back({three.hidden()[0].weights, three.hidden()[0].bias, Box::cube(2, -4, 4), 7});
  }
  {
    Matrix w(4, 2);
    w << 1, 0.3, 0.2, 1, 1, -1, 1, 1.7;
    cases.push_back({w, vec({-0.5, 0.3, 0.2, -0.9}), Box::cube(2, -4, 4), 11});
  }
  for (const auto& c : cases) {
    const Network net = one_layer(c.w, c.b);
    const std::size_t n = static_cast<std::size_t>(c.w.cols());
    const std::size_t oracle = brute_force_regions(c.w, c.b, c.box, n == 1 ? 100001 : 1201);
    CHECK(oracle == c.expected);
    CHECK(binomial_sum(static_cast<std::uint64_t>(c.w.rows()), n) == c.expected);
    const RegionCount e = count_regions(net, c.box, RegionMethod::PatternEnumeration);
    const RegionCount g = count_regions(net, c.box, RegionMethod::GridProbe);
    CHECK(e.count == c.expected);
    CHECK(g.count <= e.count);
    CHECK(e.count <= zaslavsky_bound(static_cast<std::uint64_t>(c.w.rows()), n));
    for (const auto& cert : e.certificates) {
      CHECK(activation_pattern(net, cert.witness).pattern == cert.pattern);
    }
  }

  CHECK(count_regions(load_net("quadrants.net"), Box::cube(2, -1, 1), RegionMethod::PatternEnumeration).count == 4);

  std::ostringstream csv;
  write_region_certificates(csv, count_regions(load_net("quadrants.net"), Box::cube(2, -1, 1),
                                               RegionMethod::PatternEnumeration));
  CHECK(csv.str().rfind("region,pattern,witness,jacobian,bias\n", 0) == 0);
}

TEST_CASE("region count sandwich on random nets") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g(0, 1);
  for (int t = 0; t < 5; ++t) {
    const Eigen::Index m = 3 + t;
    Matrix w(m, 2);
    Vector b(m);
    for (auto& v : w.reshaped()) v = g(rng);
    for (auto& v : b) v = g(rng);
    const Network net = one_layer(w, b);
    const Box box = Box::cube(2, -3, 3);
    const auto e = count_regions(net, box, RegionMethod::PatternEnumeration).count;
    const auto p = count_regions(net, box, RegionMethod::GridProbe).count;
    CHECK(p <= e);
    CHECK(e <= zaslavsky_bound(static_cast<std::uint64_t>(m), 2));
    CHECK(e == brute_force_regions(w, b, box, 1201));
  }
}

TEST_CASE("region enumeration refuses large nets") {
  const Network big = Network::zeros(2, {25}, {Activation::relu()});
  try {
    count_regions(big, Box::cube(2, -1, 1), RegionMethod::PatternEnumeration);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find("20") != std::string::npos);
  }
}

TEST_CASE("initialization") {
  Network net = Network::zeros(8, {1250}, {Activation::relu()});
  init_parameters(net, InitScheme::HeNormal, 5);
  const Matrix& w = net.hidden()[0].weights;
  const double mean = w.mean();
  const double var = (w.array() - mean).square().sum() / static_cast<double>(w.size() - 1);
  CHECK(std::abs(var - 0.25) <= 0.3 * 0.25);
  Network again = Network::zeros(8, {1250}, {Activation::relu()});
  init_parameters(again, InitScheme::HeNormal, 5);
  CHECK(again.parameters() == net.parameters());
  init_parameters(again, InitScheme::Uniform, 5);
  CHECK(again.hidden()[0].weights.cwiseAbs().maxCoeff() <= 1.0 / std::sqrt(8.0));
  CHECK(again.hidden()[0].bias.isZero(0.0));
}

TEST_CASE("sgd training") {
  const Dataset relu = grid_dataset(1, -1, 1, 201, [](const Vector& x) { return std::max(x[0], 0.0); });
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.learning_rate = 0.05;
  const TrainResult r = train_sgd(single_relu(0.5, 0.0, 1.0, 0.0), relu, cfg);
  MESSAGE("one-unit rmse " << network_rmse(r.net, relu));
  CHECK(network_rmse(r.net, relu) <= 1e-2);
  CHECK(r.loss_curve.size() == 200);

  cfg.epochs = 0;
  const Network start = single_relu(0.5, 0.0, 1.0, 0.0);
  const TrainResult none = train_sgd(start, relu, cfg);
  CHECK(none.loss_curve.empty());
  CHECK(none.net.parameters() == start.parameters());

  cfg.epochs = 3;
  cfg.learning_rate = 1e6;
  try {
    train_sgd(single_relu(0.5, 0.0, 1.0, 0.0), relu, cfg);
    FAIL("expected TrainingDiverged");
  } catch (const TrainingDiverged& e) {
    CHECK(e.last_good().parameters().allFinite());
  }

  cfg.learning_rate = 0.05;
  cfg.epochs = 5;
  cfg.seed = 3;
  const auto a = train_sgd(start, relu, cfg);
  const auto b = train_sgd(start, relu, cfg);
  CHECK(a.loss_curve == b.loss_curve);
  CHECK(a.net.parameters() == b.net.parameters());
}

TEST_CASE("sgd on the ridge target with a 2-16-16-1 net") {
  const Dataset data = grid_dataset(2, 0, 1, 41, [](const Vector& x) { return testing::ridge(x[0], x[1]); });
  Network net = Network::zeros(2, {16, 16}, {Activation::relu(), Activation::relu()});
  init_parameters(net, InitScheme::HeNormal, 1);
  TrainConfig cfg;
  cfg.epochs = 2000;
  const TrainResult r = train_sgd(net, data, cfg);
  MESSAGE("2-16-16-1 rmse " << network_rmse(r.net, data));
  CHECK(network_rmse(r.net, data) <= 1.0);
}

TEST_CASE("network text round trip") {
  Network net = Network::zeros(2, {3, 2, 2}, {Activation::prelu(), Activation::apl(2), Activation::maxout(2)});
  init_parameters(net, InitScheme::HeNormal, 9);
  std::ostringstream out;
  write_network(out, net);
  std::istringstream in(out.str());
  const Network back = read_network(in);
  CHECK(back.parameters() == net.parameters());
  std::ostringstream again;
  write_network(again, back);
  CHECK(again.str() == out.str());

  std::istringstream bad("pwl-net v1 inputs=2 outputs=1 layers=1\nlayer units=1 activation=tanh\n");
  CHECK_THROWS_AS(read_network(bad), ParseError);
}
