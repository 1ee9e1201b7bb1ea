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

#include "pwlnn/learning/dataset.hpp"

namespace pwlnn {

struct FitConfig {
  std::size_t max_terms = 8;
  std::size_t max_iterations = 50;
  double tolerance = 1e-10;
  double ridge = 1e-8;
  std::uint64_t seed = 1;
  double validation_fraction = 0.0;
  std::size_t restarts = 5;
  std::size_t backfit_sweeps = 20;

  // Throws InvalidModel naming the offending field.
  void validate() const;
};

struct TraceRecord {
  std::size_t round = 0;
  std::size_t terms = 0;
  double train_sse = 0.0;
  double validation_sse = 0.0;
  std::string action;
};

struct FitTrace {
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
  std::vector<TraceRecord> records;

  void add(std::size_t terms, double train_sse, double validation_sse, std::string action);
};

// round,terms,train_sse,val_sse,action
void write_trace_csv(std::ostream& out, const FitTrace& trace);
std::string trace_csv(const FitTrace& trace);

struct DataSplit {
  Dataset train;
  Dataset validation;
  // True when validation is a copy of train (fraction 0).
  bool shared = false;
};

// Seeded shuffle; floor(fraction * N) samples go to validation.
DataSplit split_dataset(const Dataset& data, double fraction, std::uint64_t seed);

// Deterministic Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

double rmse(const Vector& residual);

// True when `after` improves on `before` by more than
// tolerance * before + 1e-15 * energy, where energy is ||y||^2.
bool made_progress(double before, double after, double tolerance, double energy);

}  // namespace pwlnn
