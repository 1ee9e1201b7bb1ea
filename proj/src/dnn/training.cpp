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

#include "pwlnn/dnn/training.hpp"

#include <cmath>
#include <ostream>

#include "pwlnn/core/text_io.hpp"
#include "pwlnn/dnn/backprop.hpp"
#include "pwlnn/learning/fit.hpp"

namespace pwlnn {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw InvalidModel("learning_rate must be positive");
  if (batch_size == 0) throw InvalidModel("batch_size must be at least 1");
  if (loss != "squared") throw InvalidModel("only the squared loss is supported, got '" + loss + "'");
}

TrainingDiverged::TrainingDiverged(std::size_t epoch, double loss, Network last_good)
    : Error("training diverged at epoch " + std::to_string(epoch) + " (loss " + format_number(loss) + ")"),
      epoch_(epoch),
      last_good_(std::move(last_good)) {}

TrainResult train_sgd(Network net, const Dataset& data, const TrainConfig& config) {
  config.validate();
  require_dimension(net.input_size(), data.dimension(), "training data");
  if (net.output_size() != 1) throw InvalidModel("training needs a single-output network");
  TrainResult result{net, {}};
  const std::size_t n = data.size();
  Vector target(1);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const Network before = net;
    const auto order = seeded_permutation(n, config.seed * 0x9E3779B97F4A7C15ULL + epoch);
    double total = 0.0;
    ForwardCache cache;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      Vector grad = Vector::Zero(static_cast<Eigen::Index>(net.parameter_count()));
      for (std::size_t i = start; i < end; ++i) {
        forward(net, data.point(order[i]), &cache);
        target[0] = data.targets()[static_cast<Eigen::Index>(order[i])];
        BackwardResult b;
        try {
          b = backward(net, cache, target);
        } catch (const NonFiniteValue&) {
          throw TrainingDiverged(epoch + 1, std::numeric_limits<double>::infinity(), before);
        }
        total += b.loss;
        grad += b.parameters;
      }
      const double scale = config.learning_rate / static_cast<double>(end - start);
      net.set_parameters(net.parameters() - scale * grad);
    }
    const double mean = total / static_cast<double>(n);
    if (!std::isfinite(mean) || mean > 1e12) throw TrainingDiverged(epoch + 1, mean, before);
    result.loss_curve.push_back(mean);
  }
  result.net = std::move(net);
  return result;
}

void write_loss_curve(std::ostream& out, const std::vector<double>& curve) {
  out << "epoch,loss\n";
  for (std::size_t i = 0; i < curve.size(); ++i) out << i + 1 << ',' << format_number(curve[i]) << '\n';
}

double network_rmse(const Network& net, const Dataset& data) {
  double sse = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = forward_scalar(net, data.point(i)) - data.targets()[static_cast<Eigen::Index>(i)];
    sse += e * e;
  }
  return std::sqrt(sse / static_cast<double>(data.size()));
}

}  // namespace pwlnn
