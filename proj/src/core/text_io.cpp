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

#include "pwlnn/core/text_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "pwlnn/core/error.hpp"

namespace pwlnn {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string format_numbers(const Vector& values, char separator) {
  std::string out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i) out.push_back(separator);
    out += format_number(values[i]);
  }
  return out;
}

double parse_number(std::string_view text, std::size_t line, std::size_t column) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  auto result = std::from_chars(body.data(), body.data() + body.size(), value);
  if (result.ec != std::errc() || result.ptr != body.data() + body.size() || body.empty()) {
    throw ParseError(line, column, "expected a number, found '" + std::string(text) + "'");
  }
  return value;
}

Vector parse_numbers(std::string_view csv, std::size_t line, std::size_t column) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    const std::string_view part = csv.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start);
    values.push_back(parse_number(part, line, column + start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string Record::tag() const {
  if (!fields.empty() && fields.front().key.empty()) return fields.front().value;
  return {};
}

bool Record::has(std::string_view key) const {
  for (const auto& f : fields) {
    if (f.key == key) return true;
  }
  return false;
}

const Field& Record::field(std::string_view key) const {
  for (const auto& f : fields) {
    if (f.key == key) return f;
  }
  fail("missing field '" + std::string(key) + "='");
}

double Record::number(std::string_view key) const {
  const Field& f = field(key);
  return parse_number(f.value, line, f.column + f.key.size() + 1);
}

long long Record::integer(std::string_view key) const {
  const Field& f = field(key);
  long long value = 0;
  auto result = std::from_chars(f.value.data(), f.value.data() + f.value.size(), value);
  if (result.ec != std::errc() || result.ptr != f.value.data() + f.value.size()) {
    fail(f, "expected an integer for '" + f.key + "', found '" + f.value + "'");
  }
  return value;
}

std::size_t Record::count(std::string_view key) const {
  const long long value = integer(key);
  if (value < 0) fail(field(key), "'" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(value);
}

Vector Record::numbers(std::string_view key) const {
  const Field& f = field(key);
  return parse_numbers(f.value, line, f.column + f.key.size() + 1);
}

std::string Record::text(std::string_view key) const { return field(key).value; }

void Record::fail(const Field& at, const std::string& what) const {
  throw ParseError(line, at.column, what);
}

void Record::fail(const std::string& what) const { throw ParseError(line, 1, what); }

RecordReader::RecordReader(std::istream& in) : in_(in) {}

std::optional<Record> RecordReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::size_t first = text.find_first_not_of(" \t");
    if (first == std::string::npos || text[first] == '#') continue;
    Record record;
    record.line = line_;
    std::size_t pos = first;
    while (pos < text.size()) {
      const std::size_t end = text.find_first_of(" \t", pos);
      const std::string token =
          text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      Field f;
      f.column = pos + 1;
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) {
        f.value = token;
      } else {
        f.key = token.substr(0, eq);
        f.value = token.substr(eq + 1);
      }
      record.fields.push_back(std::move(f));
      if (end == std::string::npos) break;
      pos = text.find_first_not_of(" \t", end);
      if (pos == std::string::npos) break;
    }
    return record;
  }
  return std::nullopt;
}

Record RecordReader::expect(const std::string& what) {
  auto record = next();
  if (!record) throw ParseError(line_ + 1, 1, "unexpected end of input, expected " + what);
  return *record;
}

Record read_header(RecordReader& reader, std::string_view kind) {
  Record header = reader.expect("a 'pwl-" + std::string(kind) + " v1' header");
  const std::string expected = "pwl-" + std::string(kind);
  if (header.tag() != expected) {
    header.fail(header.fields.front(), "expected header '" + expected + "', found '" +
                                           header.fields.front().value + "'");
  }
  if (header.fields.size() < 2 || !header.fields[1].key.empty() ||
      header.fields[1].value != "v1") {
    header.fail(header.fields.size() < 2 ? header.fields.front() : header.fields[1],
                "unsupported or missing format version (expected v1)");
  }
  return header;
}

std::string peek_kind(const std::string& text) {
  std::istringstream in(text);
  RecordReader reader(in);
  auto first = reader.next();
  if (!first) throw ParseError(1, 1, "empty model file");
  const std::string tag = first->tag();
  if (tag.rfind("pwl-", 0) != 0) {
    throw ParseError(first->line, 1, "model file must start with a 'pwl-<kind> v1' header");
  }
  return tag.substr(4);
}

}  // namespace pwlnn
