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
#include <string>
#include <vector>

#include "pwlnn/core/affine.hpp"
#include "pwlnn/core/error.hpp"
#include "pwlnn/dnn/activation.hpp"

namespace pwlnn {

using ParameterMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Hidden layer: z = W x + b (W has units * inputs_per_unit rows), then the
// activation per unit. `parameters` holds one row of activation parameters
// per unit.
struct Layer {
  Matrix weights;
  Vector bias;
  Activation activation = Activation::relu();
  ParameterMatrix parameters;

  std::size_t units() const;
  std::size_t input_size() const { return static_cast<std::size_t>(weights.cols()); }
};

class NonFiniteValue : public Error {
 public:
  NonFiniteValue(std::size_t layer, const std::string& what);
  // 1-based hidden layer index; hidden count + 1 is the output layer.
  std::size_t layer() const { return layer_; }

 private:
  std::size_t layer_;
};

class Network {
 public:
  Network(std::vector<Layer> hidden, Matrix output_weights, Vector output_bias);

  // All-zero weights with default activation parameters.
  static Network zeros(std::size_t inputs, const std::vector<std::size_t>& units,
                       const std::vector<Activation>& activations, std::size_t outputs = 1);

  std::size_t input_size() const { return input_size_; }
  std::size_t output_size() const { return static_cast<std::size_t>(output_weights_.rows()); }
  std::size_t hidden_units() const;
  std::size_t parameter_count() const;

  const std::vector<Layer>& hidden() const { return hidden_; }
  std::vector<Layer>& hidden() { return hidden_; }
  const Matrix& output_weights() const { return output_weights_; }
  Matrix& output_weights() { return output_weights_; }
  const Vector& output_bias() const { return output_bias_; }
  Vector& output_bias() { return output_bias_; }

  // Order: per hidden layer W (row-major), b, activation parameters
  // (row-major); then output W (row-major), b.
  Vector parameters() const;
  void set_parameters(const Vector& flat);

 private:
  void check() const;

  std::size_t input_size_ = 0;
  std::vector<Layer> hidden_;
  Matrix output_weights_;
  Vector output_bias_;
};

enum class InitScheme { HeNormal, Uniform };
InitScheme parse_init_scheme(const std::string& name);
std::string init_scheme_name(InitScheme scheme);

// HeNormal draws weights from N(0, 2 / fan_in); Uniform from
// U(-1/sqrt(fan_in), 1/sqrt(fan_in)). Biases start at 0 and activation
// parameters at their defaults.
void init_parameters(Network& net, InitScheme scheme, std::uint64_t seed);

struct ForwardCache {
  std::vector<Vector> inputs;  // input to each hidden layer
  std::vector<Vector> pre;     // pre-activations
  Vector last;                 // output of the last hidden layer
  Vector output;
};

// W x with each row accumulated left to right.
Vector ordered_matvec(const Matrix& w, const Vector& x);

Vector forward(const Network& net, const Vector& x, ForwardCache* cache = nullptr);
double forward_scalar(const Network& net, const Vector& x);

}  // namespace pwlnn
