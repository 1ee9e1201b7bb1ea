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

#include "pwlnn/dnn/network.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pwlnn {

namespace {

std::size_t to_size(Eigen::Index i) { return static_cast<std::size_t>(i); }

Vector apply_activation(const Layer& layer, const Vector& z) {
  const std::size_t units = layer.units();
  Vector out(static_cast<Eigen::Index>(units));
  const Activation& act = layer.activation;
  if (act.kind() == ActivationKind::Maxout) {
    const auto k = static_cast<Eigen::Index>(act.group());
    for (Eigen::Index u = 0; u < static_cast<Eigen::Index>(units); ++u) {
      double best = -std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < k; ++j) best = std::max(best, z[u * k + j]);
      out[u] = best;
    }
    return out;
  }
  for (Eigen::Index u = 0; u < static_cast<Eigen::Index>(units); ++u) {
    const double* p = layer.parameters.cols() ? layer.parameters.row(u).data() : nullptr;
    out[u] = act.apply(z[u], p);
  }
  return out;
}

}  // namespace

std::size_t Layer::units() const {
  return to_size(weights.rows()) / activation.inputs_per_unit();
}

NonFiniteValue::NonFiniteValue(std::size_t layer, const std::string& what)
    : Error(what + " (layer " + std::to_string(layer) + ")"), layer_(layer) {}

Network::Network(std::vector<Layer> hidden, Matrix output_weights, Vector output_bias)
    : hidden_(std::move(hidden)),
      output_weights_(std::move(output_weights)),
      output_bias_(std::move(output_bias)) {
  input_size_ = hidden_.empty() ? to_size(output_weights_.cols()) : hidden_.front().input_size();
  check();
}

void Network::check() const {
  if (input_size_ == 0) throw InvalidModel("network needs a positive input size");
  std::size_t width = input_size_;
  for (std::size_t k = 0; k < hidden_.size(); ++k) {
    const Layer& l = hidden_[k];
    const std::string where = "hidden layer " + std::to_string(k + 1);
    const std::size_t per = l.activation.inputs_per_unit();
    if (l.weights.rows() == 0 || to_size(l.weights.rows()) % per != 0) {
      throw InvalidModel(where + " has " + std::to_string(l.weights.rows()) +
                         " pre-activations, expected a positive multiple of " + std::to_string(per));
    }
    require_dimension(width, l.input_size(), (where + " input").c_str());
    require_dimension(to_size(l.weights.rows()), to_size(l.bias.size()), (where + " bias").c_str());
    if (to_size(l.parameters.rows()) != l.units() ||
        to_size(l.parameters.cols()) != l.activation.parameter_count()) {
      if (!(l.activation.parameter_count() == 0 && l.parameters.size() == 0)) {
        throw InvalidModel(where + " activation parameters must be " + std::to_string(l.units()) + "x" +
                           std::to_string(l.activation.parameter_count()));
      }
    }
    width = l.units();
  }
  if (output_weights_.rows() == 0) throw InvalidModel("network needs at least one output");
  require_dimension(width, to_size(output_weights_.cols()), "output layer input");
  require_dimension(to_size(output_weights_.rows()), to_size(output_bias_.size()), "output bias");
}

Network Network::zeros(std::size_t inputs, const std::vector<std::size_t>& units,
                       const std::vector<Activation>& activations, std::size_t outputs) {
  if (units.size() != activations.size()) {
    throw InvalidModel("need one activation per hidden layer");
  }
  if (inputs == 0 || outputs == 0) throw InvalidModel("layer sizes must be positive");
  std::vector<Layer> hidden;
  std::size_t width = inputs;
  for (std::size_t k = 0; k < units.size(); ++k) {
    if (units[k] == 0) throw InvalidModel("hidden layer " + std::to_string(k + 1) + " has zero units");
    const Activation& act = activations[k];
    const auto rows = static_cast<Eigen::Index>(units[k] * act.inputs_per_unit());
    Layer l{Matrix::Zero(rows, static_cast<Eigen::Index>(width)), Vector::Zero(rows), act,
            ParameterMatrix(static_cast<Eigen::Index>(units[k]),
                            static_cast<Eigen::Index>(act.parameter_count()))};
    const auto defaults = act.default_parameters();
    for (Eigen::Index u = 0; u < l.parameters.rows(); ++u) {
      for (Eigen::Index j = 0; j < l.parameters.cols(); ++j) l.parameters(u, j) = defaults[to_size(j)];
    }
    hidden.push_back(std::move(l));
    width = units[k];
  }
  return Network(std::move(hidden),
                 Matrix::Zero(static_cast<Eigen::Index>(outputs), static_cast<Eigen::Index>(width)),
                 Vector::Zero(static_cast<Eigen::Index>(outputs)));
}

std::size_t Network::hidden_units() const {
  std::size_t total = 0;
  for (const auto& l : hidden_) total += l.units();
  return total;
}

std::size_t Network::parameter_count() const {
  std::size_t total = 0;
  for (const auto& l : hidden_) total += to_size(l.weights.size() + l.bias.size() + l.parameters.size());
  return total + to_size(output_weights_.size() + output_bias_.size());
}

Vector Network::parameters() const {
  Vector flat(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index at = 0;
  auto put = [&](const auto& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) flat[at++] = m(r, c);
    }
  };
  auto put_vec = [&](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) flat[at++] = v[i];
  };
  for (const auto& l : hidden_) {
    put(l.weights);
    put_vec(l.bias);
    put(l.parameters);
  }
  put(output_weights_);
  put_vec(output_bias_);
  return flat;
}

void Network::set_parameters(const Vector& flat) {
  require_dimension(parameter_count(), to_size(flat.size()), "network parameters");
  Eigen::Index at = 0;
  auto take = [&](auto& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = flat[at++];
    }
  };
  auto take_vec = [&](Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = flat[at++];
  };
  for (auto& l : hidden_) {
    take(l.weights);
    take_vec(l.bias);
    take(l.parameters);
  }
  take(output_weights_);
  take_vec(output_bias_);
}

InitScheme parse_init_scheme(const std::string& name) {
  if (name == "he-normal") return InitScheme::HeNormal;
  if (name == "uniform") return InitScheme::Uniform;
  throw InvalidModel("unknown init scheme '" + name + "' (expected he-normal or uniform)");
}

std::string init_scheme_name(InitScheme scheme) {
  return scheme == InitScheme::HeNormal ? "he-normal" : "uniform";
}

void init_parameters(Network& net, InitScheme scheme, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto fill = [&](Matrix& w) {
    const double fan_in = static_cast<double>(w.cols());
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / fan_in));
    const double limit = 1.0 / std::sqrt(fan_in);
    std::uniform_real_distribution<double> uniform(-limit, limit);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        w(r, c) = scheme == InitScheme::HeNormal ? normal(rng) : uniform(rng);
      }
    }
  };
  for (auto& l : net.hidden()) {
    fill(l.weights);
    l.bias.setZero();
    const auto defaults = l.activation.default_parameters();
    for (Eigen::Index u = 0; u < l.parameters.rows(); ++u) {
      for (Eigen::Index j = 0; j < l.parameters.cols(); ++j) l.parameters(u, j) = defaults[to_size(j)];
    }
  }
  fill(net.output_weights());
  net.output_bias().setZero();
}

Vector ordered_matvec(const Matrix& w, const Vector& x) {
  Vector out(w.rows());
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < w.cols(); ++c) s += w(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

Vector forward(const Network& net, const Vector& x, ForwardCache* cache) {
  require_dimension(net.input_size(), to_size(x.size()), "network input");
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
  }
  Vector f = x;
  for (const auto& l : net.hidden()) {
    Vector z = ordered_matvec(l.weights, f) + l.bias;
    Vector next = apply_activation(l, z);
    if (cache) {
      cache->inputs.push_back(std::move(f));
      cache->pre.push_back(std::move(z));
    }
    f = std::move(next);
  }
  Vector out = ordered_matvec(net.output_weights(), f) + net.output_bias();
  if (cache) {
    cache->last = f;
    cache->output = out;
  }
  return out;
}

double forward_scalar(const Network& net, const Vector& x) {
  if (net.output_size() != 1) throw InvalidModel("network has more than one output");
  return forward(net, x)[0];
}

}  // namespace pwlnn
