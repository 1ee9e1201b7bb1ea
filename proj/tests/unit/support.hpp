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

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "pwlnn/core/affine.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(PWLNN_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Hand-written evaluations of the fixture functions, independent of the
// library's representations.
inline double abs_plane(const pwlnn::Vector& x) { return std::abs(x[0] - x[1] + x[2] + 1.0); }

inline double three_piece(double x) {
  if (x <= -1.0) return x + 2.0;
  if (x <= 1.0) return -x;
  return x - 2.0;
}

inline double ridge(double x1, double x2) {
  if (x2 >= x1) return 8 * x1 - 5 * x2 >= 1 ? 80 * x1 - 50 * x2 - 10 : 0.0;
  return -5 * x1 + 8 * x2 >= 1 ? -50 * x1 + 80 * x2 - 10 : 0.0;
}

inline double five_piece(double x) {
  if (x <= 1.0) return 0.5 * x + 0.5;
  if (x <= 1.5) return 2 * x - 1;
  if (x <= 3.5) return 2.0;
  if (x <= 4.0) return -2 * x + 9;
  return -0.5 * x + 3;
}

// Absolute tolerance for decimal inputs; integer and dyadic data compare with ==.
inline constexpr double kDecimalTolerance = 1e-12;

inline bool near(double a, double b, double tolerance = kDecimalTolerance) { return std::abs(a - b) <= tolerance; }

inline pwlnn::Vector vec(std::initializer_list<double> values) {
  pwlnn::Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double d : values) v[i++] = d;
  return v;
}

}  // namespace testing
