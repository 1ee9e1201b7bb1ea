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
#include <string>
#include <vector>

namespace pwlnn {

enum class ActivationKind { ReLU, Leaky, PReLU, SReLU, FReLU, APL, Maxout };

// A scalar PWL activation (or a k-way max for Maxout). Trainable parameters
// live in the owning layer, `parameter_count()` per unit, and are passed in
// as a pointer to that unit's block.
//
//   relu     max{z, 0}
//   leaky    max{z, 0} - lambda max{-z, 0}            lambda fixed
//   prelu    max{z, 0} - lambda max{-z, 0}            p = (lambda)
//   srelu    a0 z + b0 + a1 |z - tl| + a2 |z - tr|     p = (a0, b0, a1, a2, tl, tr)
//   frelu    max{z + a, 0} + b                        p = (a, b)
//   apl:S    max{z, 0} + sum_s a_s max{0, -z + b_s}   p = (a_1, b_1, ..., a_S, b_S)
//   maxout:k max over k consecutive pre-activations
//
// Derivatives at kinks are right derivatives.
class Activation {
 public:
  static Activation relu();
  static Activation leaky(double lambda);
  static Activation prelu();
  static Activation srelu();
  static Activation frelu();
  static Activation apl(std::size_t hinges);
  static Activation maxout(std::size_t group);

  // "relu", "leaky:0.01", "prelu", "srelu", "frelu", "apl:2", "maxout:3".
  static Activation parse(const std::string& descriptor);
  std::string descriptor() const;

  ActivationKind kind() const { return kind_; }
  double leak() const { return leak_; }
  std::size_t hinges() const { return hinges_; }
  std::size_t group() const { return group_; }

  // Pre-activations consumed per unit (k for Maxout, else 1).
  std::size_t inputs_per_unit() const;
  std::size_t parameter_count() const;
  // Parameters that make the unit behave as a ReLU where possible.
  std::vector<double> default_parameters() const;

  // Scalar kinds only.
  double apply(double z, const double* p) const;
  double derivative(double z, const double* p) const;
  // Adds upstream * d sigma / d p_i into grad[i].
  void accumulate_parameter_gradient(double z, const double* p, double upstream, double* grad) const;
  // Index of the linear piece containing z, and that piece's slope/intercept.
  std::size_t piece(double z, const double* p) const;
  void piece_map(std::size_t piece, const double* p, double& slope, double& intercept) const;
  // Pre-activation values where the piece changes.
  std::vector<double> kinks(const double* p) const;

  bool operator==(const Activation& other) const = default;

 private:
  Activation(ActivationKind kind, double leak, std::size_t hinges, std::size_t group)
      : kind_(kind), leak_(leak), hinges_(hinges), group_(group) {}

  ActivationKind kind_;
  double leak_ = 0.0;
  std::size_t hinges_ = 0;
  std::size_t group_ = 1;
};

}  // namespace pwlnn
