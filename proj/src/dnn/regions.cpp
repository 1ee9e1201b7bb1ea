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

#include "pwlnn/dnn/regions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

// One boundary of a pattern's region: normal . x + offset >= 0.
struct Constraint {
  Vector normal;
  double offset = 0.0;
};

struct Trace {
  PatternAtPoint at;
  std::vector<Constraint> constraints;
  // Smallest distance of any pre-activation from a piece boundary,
  // relative to the local scale.
  double margin = std::numeric_limits<double>::infinity();
};

double scale_of(const Vector& row, double offset) {
  return std::max(1.0, row.lpNorm<Eigen::Infinity>() + std::abs(offset));
}

void add_constraint(Trace& t, const Vector& normal, double offset, double value) {
  t.constraints.push_back({normal, offset});
  t.margin = std::min(t.margin, value / scale_of(normal, offset));
}

Trace trace_point(const Network& net, const Vector& x) {
  const auto n = static_cast<Eigen::Index>(net.input_size());
  Trace t;
  Matrix a = Matrix::Identity(n, n);
  Vector c = Vector::Zero(n);
  Vector h = x;
  for (const auto& layer : net.hidden()) {
    const Vector z = ordered_matvec(layer.weights, h) + layer.bias;
    const Matrix az = layer.weights * a;
    const Vector cz = ordered_matvec(layer.weights, c) + layer.bias;
    const std::size_t units = layer.units();
    const auto& act = layer.activation;
    Matrix next_a(static_cast<Eigen::Index>(units), n);
    Vector next_c(static_cast<Eigen::Index>(units));
    Vector next_h(static_cast<Eigen::Index>(units));
    std::vector<std::size_t> states(units);
    for (std::size_t u = 0; u < units; ++u) {
      const auto ui = static_cast<Eigen::Index>(u);
      if (act.kind() == ActivationKind::Maxout) {
        const std::size_t k = act.group();
        const auto base = static_cast<Eigen::Index>(u * k);
        std::size_t best = 0;
        for (std::size_t j = 1; j < k; ++j) {
          if (z[base + static_cast<Eigen::Index>(j)] > z[base + static_cast<Eigen::Index>(best)]) best = j;
        }
        const auto bi = base + static_cast<Eigen::Index>(best);
        for (std::size_t j = 0; j < k; ++j) {
          if (j == best) continue;
          const auto ji = base + static_cast<Eigen::Index>(j);
          add_constraint(t, (az.row(bi) - az.row(ji)).transpose(), cz[bi] - cz[ji], z[bi] - z[ji]);
        }
        states[u] = best;
        next_a.row(ui) = az.row(bi);
        next_c[ui] = cz[bi];
        next_h[ui] = z[bi];
      } else {
        const double* p = layer.parameters.cols() > 0 ? layer.parameters.row(ui).data() : nullptr;
        const std::size_t piece = act.piece(z[ui], p);
        auto kinks = act.kinks(p);
        std::sort(kinks.begin(), kinks.end());
        const Vector row = az.row(ui).transpose();
        if (piece > 0) add_constraint(t, row, cz[ui] - kinks[piece - 1], z[ui] - kinks[piece - 1]);
        if (piece < kinks.size()) add_constraint(t, -row, kinks[piece] - cz[ui], kinks[piece] - z[ui]);
        double slope = 0.0;
        double intercept = 0.0;
        act.piece_map(piece, p, slope, intercept);
        states[u] = piece;
        next_a.row(ui) = slope * az.row(ui);
        next_c[ui] = slope * cz[ui] + intercept;
        next_h[ui] = act.apply(z[ui], p);
      }
    }
    t.at.pattern.states.push_back(std::move(states));
    a = std::move(next_a);
    c = std::move(next_c);
    h = std::move(next_h);
  }
  t.at.map.jacobian = net.output_weights() * a;
  t.at.map.bias = ordered_matvec(net.output_weights(), c) + net.output_bias();
  return t;
}

constexpr double kRobustMargin = 1e-10;

std::size_t default_density(std::size_t n) {
  switch (n) {
    case 1: return 4001;
    case 2: return 201;
    case 3: return 31;
    case 4: return 11;
    default: return 5;
  }
}

bool strictly_inside(const Box& box, const Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > box.lower[i] && x[i] < box.upper[i])) return false;
  }
  return true;
}

// Visits every n-subset of {0..count-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t count, std::size_t n, Visit&& visit) {
  if (n > count) return;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == count - n + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

class Enumerator {
 public:
  Enumerator(const Network& net, const Box& box) : net_(net), box_(box) {
    const std::size_t n = box.dimension();
    for (std::size_t i = 0; i < n; ++i) {
      Vector e = Vector::Zero(static_cast<Eigen::Index>(n));
      e[static_cast<Eigen::Index>(i)] = 1.0;
      box_constraints_.push_back({e, -box.lower[static_cast<Eigen::Index>(i)]});
      box_constraints_.push_back({-e, box.upper[static_cast<Eigen::Index>(i)]});
    }
    step_ = 1e-7 * std::max(1.0, box.diameter());
  }

  void probe(const Vector& x) {
    if (!strictly_inside(box_, x)) return;
    Trace t = trace_point(net_, x);
    if (!(t.margin > kRobustMargin)) return;
    if (found_.count(t.at.pattern)) return;
    found_.emplace(t.at.pattern, RegionCertificate{t.at.pattern, x, t.at.map});
    queue_.push_back(std::move(t));
  }

  void walk() {
    while (!queue_.empty()) {
      Trace t = std::move(queue_.front());
      queue_.pop_front();
      explore(t);
    }
  }

  RegionCount result() const {
    RegionCount r;
    r.method = RegionMethod::PatternEnumeration;
    r.count = found_.size();
    for (const auto& entry : found_) r.certificates.push_back(entry.second);
    return r;
  }

 private:
  // Probes around every vertex of the region inside the box, one point per
  // orthant of the constraints meeting there.
  void explore(const Trace& t) {
    std::vector<Constraint> all = t.constraints;
    all.insert(all.end(), box_constraints_.begin(), box_constraints_.end());
    const std::size_t n = box_.dimension();
    const auto ni = static_cast<Eigen::Index>(n);
    for_each_subset(all.size(), n, [&](const std::vector<std::size_t>& idx) {
      Matrix a(ni, ni);
      Vector rhs(ni);
      for (std::size_t r = 0; r < n; ++r) {
        a.row(static_cast<Eigen::Index>(r)) = all[idx[r]].normal.transpose();
        rhs[static_cast<Eigen::Index>(r)] = -all[idx[r]].offset;
      }
      Eigen::FullPivLU<Matrix> lu(a);
      if (!lu.isInvertible()) return;
      const Vector v = lu.solve(rhs);
      if (!box_.contains(v, 1e-9 * std::max(1.0, box_.diameter()))) return;
      for (const auto& c : t.constraints) {
        if (c.normal.dot(v) + c.offset < -1e-9 * scale_of(c.normal, c.offset)) return;
      }
      const Matrix inv = lu.inverse();
      for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
        Vector signs(ni);
        for (std::size_t r = 0; r < n; ++r) signs[static_cast<Eigen::Index>(r)] = (s >> r) & 1U ? -1.0 : 1.0;
        Vector d = inv * signs;
        const double norm = d.norm();
        if (!(norm > 0.0)) continue;
        probe(v + (step_ / norm) * d);
      }
    });
  }

  const Network& net_;
  Box box_;
  std::vector<Constraint> box_constraints_;
  double step_ = 0.0;
  std::map<ActivationPattern, RegionCertificate> found_;
  std::deque<Trace> queue_;
};

}  // namespace

std::string ActivationPattern::str() const {
  std::string s;
  for (std::size_t l = 0; l < states.size(); ++l) {
    if (l > 0) s += '|';
    for (std::size_t u = 0; u < states[l].size(); ++u) {
      if (u > 0) s += ';';
      s += std::to_string(states[l][u]);
    }
  }
  return s;
}

Vector LocalAffineMap::operator()(const Vector& x) const {
  return ordered_matvec(jacobian, x) + bias;
}

PatternAtPoint activation_pattern(const Network& net, const Vector& x) {
  require_dimension(net.input_size(), static_cast<std::size_t>(x.size()), "activation pattern input");
  return trace_point(net, x).at;
}

RegionMethod parse_region_method(const std::string& name) {
  if (name == "pattern-enumeration") return RegionMethod::PatternEnumeration;
  if (name == "grid-probe") return RegionMethod::GridProbe;
  throw InvalidModel("unknown region method '" + name + "' (expected pattern-enumeration or grid-probe)");
}

std::string region_method_name(RegionMethod method) {
  return method == RegionMethod::GridProbe ? "grid-probe" : "pattern-enumeration";
}

RegionCount count_regions(const Network& net, const Box& box, RegionMethod method,
                          const RegionOptions& options) {
  require_dimension(net.input_size(), box.dimension(), "region box");
  const std::size_t n = box.dimension();
  const std::size_t density = options.grid_density > 0 ? options.grid_density : default_density(n);
  if (method == RegionMethod::GridProbe) {
    const double points = std::pow(static_cast<double>(density), static_cast<double>(n));
    if (points > 1e7) {
      throw BudgetExceeded("grid probe is limited to 10000000 points; requested " + format_number(points));
    }
    RegionCount r;
    r.method = method;
    std::set<std::vector<long long>> maps;
    for_each_grid_point(box, density, [&](const Vector& x) {
      if (!strictly_inside(box, x)) return;
      const Trace t = trace_point(net, x);
      if (!(t.margin > kRobustMargin)) return;
      std::vector<long long> key;
      const auto quantize = [&](double v) { key.push_back(std::llround(v * 1e9)); };
      for (Eigen::Index i = 0; i < t.at.map.jacobian.size(); ++i) quantize(t.at.map.jacobian.data()[i]);
      for (Eigen::Index i = 0; i < t.at.map.bias.size(); ++i) quantize(t.at.map.bias[i]);
      if (maps.insert(std::move(key)).second) r.certificates.push_back({t.at.pattern, x, t.at.map});
    });
    r.count = maps.size();
    return r;
  }
  if (net.hidden_units() > kRegionUnitBudget) {
    throw BudgetExceeded("pattern enumeration is limited to " + std::to_string(kRegionUnitBudget) +
                         " hidden units; network has " + std::to_string(net.hidden_units()));
  }
  Enumerator e(net, box);
  for_each_grid_point(box, std::min<std::size_t>(density, 101), [&](const Vector& x) { e.probe(x); });
  for (const auto& x : lattice_rule_points(box, 1024)) e.probe(x);
  e.walk();
  return e.result();
}

void write_region_certificates(std::ostream& out, const RegionCount& result) {
  out << "region,pattern,witness,jacobian,bias\n";
  for (std::size_t i = 0; i < result.certificates.size(); ++i) {
    const auto& c = result.certificates[i];
    std::string rows;
    for (Eigen::Index r = 0; r < c.map.jacobian.rows(); ++r) {
      if (r > 0) rows += '|';
      rows += format_numbers(c.map.jacobian.row(r).transpose(), ';');
    }
    out << i + 1 << ',' << c.pattern.str() << ',' << format_numbers(c.witness, ';') << ',' << rows << ','
        << format_numbers(c.map.bias, ';') << '\n';
  }
}

std::uint64_t zaslavsky_bound(std::uint64_t hyperplanes, std::uint64_t dimension) {
  unsigned __int128 term = 1;
  unsigned __int128 total = 1;
  const auto limit = static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max());
  const auto overflow = [&] {
    return BudgetExceeded("Zaslavsky bound for " + std::to_string(hyperplanes) + " hyperplanes in dimension " +
                          std::to_string(dimension) + " exceeds 64 bits");
  };
  // Both factors stay below 2^64, so the product fits in 128 bits.
  for (std::uint64_t j = 0; j < std::min(hyperplanes, dimension); ++j) {
    term = term * (hyperplanes - j) / (j + 1);
    total += term;
    if (term > limit || total > limit) throw overflow();
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace pwlnn
