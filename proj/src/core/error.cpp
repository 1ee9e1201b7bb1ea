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

#include "pwlnn/core/error.hpp"

#include <sstream>

namespace pwlnn {

namespace {

std::string dimension_message(std::size_t expected, std::size_t actual,
                              const std::string& context) {
  std::ostringstream out;
  out << "dimension mismatch";
  if (!context.empty()) out << " in " << context;
  out << ": expected " << expected << ", got " << actual;
  return out.str();
}

std::string parse_message(std::size_t line, std::size_t column,
                          const std::string& what) {
  std::ostringstream out;
  out << "parse error at line " << line << ", column " << column << ": "
      << what;
  return out.str();
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual,
                                     const std::string& context)
    : Error(dimension_message(expected, actual, context)),
      expected_(expected),
      actual_(actual) {}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : Error(parse_message(line, column, what)), line_(line), column_(column) {}

void require_dimension(std::size_t expected, std::size_t actual,
                       const char* context) {
  if (expected != actual) throw DimensionMismatch(expected, actual, context);
}

}  // namespace pwlnn
