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

#include "pwlnn/core/analysis.hpp"
#include "pwlnn/core/conventional.hpp"
#include "pwlnn/repr/models.hpp"

namespace pwlnn {

class NotCplrRepresentable : public Error {
 public:
  explicit NotCplrRepresentable(VariationCertificate certificate);
  const VariationCertificate& certificate() const { return certificate_; }

 private:
  VariationCertificate certificate_;
};

// One |.| term per hyperplane with a non-zero Jacobian jump c:
//   sign(c) * |(|c|/2) (normal . x - offset)|
// plus the affine part fixed by the lowest-label region. Throws
// NotCplrRepresentable when the consistent variation check fails and
// DiscontinuousModel for discontinuous input.
CplrModel cplr_from_consistent(const ConventionalPWL& model);

}  // namespace pwlnn
