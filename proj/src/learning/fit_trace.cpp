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

#include "pwlnn/learning/fit.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "pwlnn/core/error.hpp"
#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

void FitConfig::validate() const {
  if (max_terms == 0) throw InvalidModel("max_terms must be at least 1");
  if (max_iterations == 0) throw InvalidModel("max_iterations must be at least 1");
  if (!(tolerance > 0.0)) throw InvalidModel("tolerance must be positive");
  if (!(ridge >= 0.0)) throw InvalidModel("ridge must be non-negative");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw InvalidModel("validation_fraction must lie in [0, 1)");
  }
}

void FitTrace::add(std::size_t terms, double train_sse, double validation_sse, std::string action) {
  records.push_back(TraceRecord{records.size(), terms, train_sse, validation_sse, std::move(action)});
}

void write_trace_csv(std::ostream& out, const FitTrace& trace) {
  out << "round,terms,train_sse,val_sse,action\n";
  for (const auto& r : trace.records) {
    out << r.round << ',' << r.terms << ',' << format_number(r.train_sse) << ','
        << format_number(r.validation_sse) << ',' << r.action << '\n';
  }
}

std::string trace_csv(const FitTrace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

DataSplit split_dataset(const Dataset& data, double fraction, std::uint64_t seed) {
  const auto n_val = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(data.size())));
  if (n_val == 0) return DataSplit{data, data, true};
  if (n_val >= data.size()) throw InvalidModel("validation split leaves no training data");
  const auto order = seeded_permutation(data.size(), seed);
  std::vector<std::size_t> val(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  std::sort(val.begin(), val.end());
  std::sort(train.begin(), train.end());
  return DataSplit{data.subset(train), data.subset(val), false};
}

double rmse(const Vector& residual) {
  if (residual.size() == 0) return 0.0;
  return std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));
}

bool made_progress(double before, double after, double tolerance, double energy) {
  return after < before - tolerance * before - 1e-15 * energy;
}

}  // namespace pwlnn
