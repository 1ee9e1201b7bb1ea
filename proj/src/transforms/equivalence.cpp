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

#include "pwlnn/transforms/equivalence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

EquivalenceReport check_equivalence(const Evaluator& a, const Evaluator& b, const Box& box,
                                    std::size_t grid_density, double tolerance,
                                    std::size_t extra_samples) {
  EquivalenceReport report;
  report.tolerance = tolerance;
  report.argmax = (box.lower + box.upper) / 2.0;
  auto visit = [&](const Vector& x) {
    double deviation = std::abs(a(x) - b(x));
    if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
    ++report.samples;
    if (deviation > report.max_deviation) {
      report.max_deviation = deviation;
      report.argmax = x;
    }
  };
  if (grid_density > 0) for_each_grid_point(box, grid_density, visit);
  if (extra_samples > 0) {
    for (const auto& x : lattice_rule_points(box, extra_samples)) visit(x);
  }
  report.equivalent = report.max_deviation <= tolerance;
  return report;
}

std::string format_report(const EquivalenceReport& report) {
  std::ostringstream out;
  out << "max_deviation: " << format_number(report.max_deviation) << '\n'
      << "argmax: " << format_numbers(report.argmax) << '\n'
      << "samples: " << report.samples << '\n'
      << "tolerance: " << format_number(report.tolerance) << '\n'
      << "verdict: " << (report.equivalent ? "equivalent" : "different") << '\n';
  return out.str();
}

}  // namespace pwlnn
