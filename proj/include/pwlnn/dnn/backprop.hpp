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

#include "pwlnn/dnn/network.hpp"

namespace pwlnn {

// L = sum_o (yhat_o - y_o)^2
double squared_loss(const Vector& output, const Vector& target);

struct BackwardResult {
  double loss = 0.0;
  // Same layout as Network::parameters().
  Vector parameters;
  // dL/dx
  Vector input;
};

// Chain rule through the cached forward pass; kinks use right derivatives
// and Maxout routes the gradient to the first maximal entry. Throws
// NonFiniteValue naming the first layer with a non-finite value.
BackwardResult backward(const Network& net, const ForwardCache& cache, const Vector& target);

BackwardResult loss_gradient(const Network& net, const Vector& x, const Vector& target);

}  // namespace pwlnn
