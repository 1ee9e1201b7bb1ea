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

#include "pwlnn/core/affine.hpp"

namespace pwlnn {

// argmin ||X theta - y||^2 + ridge ||theta||^2 by column-pivoted QR of the
// stacked system [X; sqrt(ridge) I]. Throws SingularSystem when ridge is 0
// and X is rank deficient.
Vector least_squares(const Matrix& x, const Vector& y, double ridge);

double sum_squared_error(const Matrix& x, const Vector& theta, const Vector& y);

}  // namespace pwlnn
