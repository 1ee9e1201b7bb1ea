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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pwlnn/dnn/network.hpp"
#include "pwlnn/learning/dataset.hpp"

namespace pwlnn {

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t batch_size = 16;
  std::size_t epochs = 100;
  std::uint64_t seed = 1;
  std::string loss = "squared";
  InitScheme init = InitScheme::HeNormal;

  void validate() const;
};

class TrainingDiverged : public Error {
 public:
  TrainingDiverged(std::size_t epoch, double loss, Network last_good);
  std::size_t epoch() const { return epoch_; }
  const Network& last_good() const { return last_good_; }

 private:
  std::size_t epoch_;
  Network last_good_;
};

struct TrainResult {
  Network net;
  // Mean per-sample loss of each epoch, accumulated before each step.
  std::vector<double> loss_curve;
};

// Mini-batch SGD on the squared loss with a seeded shuffle per epoch. A
// non-finite or > 1e12 epoch loss throws TrainingDiverged holding the
// network from the end of the previous epoch.
TrainResult train_sgd(Network net, const Dataset& data, const TrainConfig& config);

// epoch,loss
void write_loss_curve(std::ostream& out, const std::vector<double>& curve);

double network_rmse(const Network& net, const Dataset& data);

}  // namespace pwlnn
