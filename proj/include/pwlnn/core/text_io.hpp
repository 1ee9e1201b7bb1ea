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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwlnn/core/affine.hpp"

namespace pwlnn {

// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);
std::string format_numbers(const Vector& values, char separator = ',');

// Token inside a record line; `key` is empty for bare words.
struct Field {
  std::string key;
  std::string value;
  std::size_t column = 0;
};

// One non-blank, non-comment line of a model file split on whitespace.
struct Record {
  std::size_t line = 0;
  std::vector<Field> fields;

  // First bare word, or empty.
  std::string tag() const;
  bool has(std::string_view key) const;
  const Field& field(std::string_view key) const;

  double number(std::string_view key) const;
  long long integer(std::string_view key) const;
  std::size_t count(std::string_view key) const;
  Vector numbers(std::string_view key) const;
  std::string text(std::string_view key) const;

  [[noreturn]] void fail(const Field& at, const std::string& what) const;
  [[noreturn]] void fail(const std::string& what) const;
};

double parse_number(std::string_view text, std::size_t line, std::size_t column);
Vector parse_numbers(std::string_view csv, std::size_t line, std::size_t column);

class RecordReader {
 public:
  explicit RecordReader(std::istream& in);

  std::optional<Record> next();
  // Throws ParseError when the stream is exhausted.
  Record expect(const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// Reads the "pwl-<kind> v1 ..." header and checks kind and version.
Record read_header(RecordReader& reader, std::string_view kind);

// Kind named by the first header line, without consuming the stream content
// of a string buffer.
std::string peek_kind(const std::string& text);

}  // namespace pwlnn
