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

#include "pwlnn/dnn/backprop.hpp"

#include <cmath>

namespace pwlnn {

namespace {

void check_finite(const Network& net, const ForwardCache& cache) {
  for (std::size_t k = 0; k < cache.pre.size(); ++k) {
    if (!cache.pre[k].allFinite()) throw NonFiniteValue(k + 1, "non-finite pre-activation");
  }
  if (!cache.output.allFinite()) throw NonFiniteValue(net.hidden().size() + 1, "non-finite network output");
}

}  // namespace

double squared_loss(const Vector& output, const Vector& target) {
  require_dimension(static_cast<std::size_t>(output.size()), static_cast<std::size_t>(target.size()),
                    "loss target");
  double loss = 0.0;
  for (Eigen::Index i = 0; i < output.size(); ++i) {
    const double e = output[i] - target[i];
    loss += e * e;
  }
  return loss;
}

BackwardResult backward(const Network& net, const ForwardCache& cache, const Vector& target) {
  BackwardResult result;
  result.loss = squared_loss(cache.output, target);
  if (!std::isfinite(result.loss)) {
    check_finite(net, cache);
    throw NonFiniteValue(net.hidden().size() + 1, "non-finite loss");
  }
  result.parameters = Vector::Zero(static_cast<Eigen::Index>(net.parameter_count()));

  // Offsets of each layer's block in the flat layout.
  std::vector<Eigen::Index> offset;
  Eigen::Index at = 0;
  for (const auto& l : net.hidden()) {
    offset.push_back(at);
    at += l.weights.size() + l.bias.size() + l.parameters.size();
  }
  const Eigen::Index out_at = at;

  const Vector g = 2.0 * (cache.output - target);
  const Matrix& wo = net.output_weights();
  for (Eigen::Index r = 0; r < wo.rows(); ++r) {
    for (Eigen::Index c = 0; c < wo.cols(); ++c) result.parameters[out_at + r * wo.cols() + c] = g[r] * cache.last[c];
  }
  for (Eigen::Index r = 0; r < wo.rows(); ++r) result.parameters[out_at + wo.size() + r] = g[r];
  Vector delta = wo.transpose() * g;

  for (std::size_t k = net.hidden().size(); k-- > 0;) {
    const Layer& l = net.hidden()[k];
    const Vector& z = cache.pre[k];
    const Vector& in = cache.inputs[k];
    Vector dz = Vector::Zero(z.size());
    const Eigen::Index w_at = offset[k];
    const Eigen::Index b_at = w_at + l.weights.size();
    const Eigen::Index p_at = b_at + l.bias.size();
    const Activation& act = l.activation;
    const auto units = static_cast<Eigen::Index>(l.units());
    if (act.kind() == ActivationKind::Maxout) {
      const auto group = static_cast<Eigen::Index>(act.group());
      for (Eigen::Index u = 0; u < units; ++u) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < group; ++j) {
          if (z[u * group + j] > z[u * group + best]) best = j;
        }
        dz[u * group + best] = delta[u];
      }
    } else {
      const auto pc = static_cast<Eigen::Index>(act.parameter_count());
      for (Eigen::Index u = 0; u < units; ++u) {
        const double* p = pc ? l.parameters.row(u).data() : nullptr;
        dz[u] = delta[u] * act.derivative(z[u], p);
        if (pc) {
          std::vector<double> local(static_cast<std::size_t>(pc), 0.0);
          act.accumulate_parameter_gradient(z[u], p, delta[u], local.data());
          for (Eigen::Index j = 0; j < pc; ++j) result.parameters[p_at + u * pc + j] += local[static_cast<std::size_t>(j)];
        }
      }
    }
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
        result.parameters[w_at + r * l.weights.cols() + c] = dz[r] * in[c];
      }
      result.parameters[b_at + r] = dz[r];
    }
    delta = l.weights.transpose() * dz;
  }
  result.input = delta;
  return result;
}

BackwardResult loss_gradient(const Network& net, const Vector& x, const Vector& target) {
  ForwardCache cache;
  forward(net, x, &cache);
  return backward(net, cache, target);
}

}  // namespace pwlnn
