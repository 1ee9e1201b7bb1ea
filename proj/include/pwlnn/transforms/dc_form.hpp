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
#include <iosfwd>
#include <vector>

#include "pwlnn/core/affine.hpp"
#include "pwlnn/core/error.hpp"
#include "pwlnn/repr/models.hpp"

namespace pwlnn {

inline constexpr std::size_t kDcSizeLimit = 4096;

class DcSizeExceeded : public Error {
 public:
  explicit DcSizeExceeded(std::size_t size);
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

// Difference of two convex functions: max over `plus` minus max over `minus`.
// Both sets are kept sorted and free of exact duplicates.
class DcForm {
 public:
  DcForm(std::vector<AffineFunction> plus, std::vector<AffineFunction> minus);

  // plus = {f}, minus = {0}
  static DcForm affine(const AffineFunction& f);

  std::size_t dimension() const { return plus_.front().dimension(); }
  const std::vector<AffineFunction>& plus() const { return plus_; }
  const std::vector<AffineFunction>& minus() const { return minus_; }

 private:
  std::vector<AffineFunction> plus_;
  std::vector<AffineFunction> minus_;
};

double evaluate(const DcForm& f, const Vector& x);

DcForm dc_sum(const DcForm& f, const DcForm& g);
DcForm dc_negate(const DcForm& f);
DcForm dc_scale(const DcForm& f, double c);
DcForm dc_max(const DcForm& f, const DcForm& g);
DcForm dc_min(const DcForm& f, const DcForm& g);
DcForm dc_abs(const DcForm& f);

// Two terms: +1 * max(plus) and -1 * max(minus).
GhhModel ghh_from_dc(const DcForm& f);

//   pwl-dc v1 dim=<n> plus=<p> minus=<q>
//   plus J=<csv> b=<val>     (p lines)
//   minus J=<csv> b=<val>    (q lines)
void write_model(std::ostream& out, const DcForm& f);
DcForm read_dc(std::istream& in);

}  // namespace pwlnn
