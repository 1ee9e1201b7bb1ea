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

#include "pwlnn/core/conventional_io.hpp"

#include <ostream>
#include <sstream>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

void write_halfspace(std::ostream& out, const char* tag, const Halfspace& h) {
  out << tag << " normal=" << format_numbers(h.normal)
      << " offset=" << format_number(h.offset) << " closed=" << (h.closed ? 1 : 0)
      << '\n';
}

Halfspace read_halfspace(const Record& r, std::size_t dimension) {
  const Vector normal = r.numbers("normal");
  if (static_cast<std::size_t>(normal.size()) != dimension) {
    r.fail(r.field("normal"), "halfspace normal has " + std::to_string(normal.size()) +
                                  " entries, expected " + std::to_string(dimension));
  }
  const long long closed = r.integer("closed");
  if (closed != 0 && closed != 1) r.fail(r.field("closed"), "closed must be 0 or 1");
  if (normal.isZero(0.0)) r.fail(r.field("normal"), "halfspace normal must be non-zero");
  return Halfspace(normal, r.number("offset"), closed == 1);
}

}  // namespace

void write_conventional(std::ostream& out, const ConventionalPWL& model) {
  out << "pwl-conventional v1 dim=" << model.dimension()
      << " pieces=" << model.size() << '\n';
  if (model.domain()) {
    for (const auto& h : model.domain()->halfspaces()) write_halfspace(out, "D:", h);
  }
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& piece = model.pieces()[i];
    out << "J=" << format_numbers(piece.jacobian()) << " b=" << format_number(piece.bias());
    if (model.regions()[i].label() != static_cast<int>(i + 1)) {
      out << " label=" << model.regions()[i].label();
    }
    out << '\n';
    for (const auto& h : model.regions()[i].halfspaces()) write_halfspace(out, "H:", h);
  }
}

ConventionalPWL read_conventional(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "conventional");
  const std::size_t n = header.count("dim");
  const std::size_t d = header.count("pieces");
  if (n == 0) header.fail(header.field("dim"), "dim must be positive");

  std::vector<Halfspace> domain;
  std::vector<AffineFunction> pieces;
  std::vector<std::vector<Halfspace>> halfspaces;
  std::vector<int> labels;
  while (auto r = reader.next()) {
    const std::string tag = r->tag();
    if (tag == "D:") {
      if (!pieces.empty()) r->fail(r->fields.front(), "domain lines must precede pieces");
      domain.push_back(read_halfspace(*r, n));
    } else if (tag == "H:") {
      if (pieces.empty()) r->fail(r->fields.front(), "halfspace before any piece");
      halfspaces.back().push_back(read_halfspace(*r, n));
    } else if (tag.empty() && r->has("J")) {
      const Vector j = r->numbers("J");
      if (static_cast<std::size_t>(j.size()) != n) {
        r->fail(r->field("J"), "jacobian has " + std::to_string(j.size()) +
                                   " entries, expected " + std::to_string(n));
      }
      pieces.emplace_back(j, r->number("b"));
      halfspaces.emplace_back();
      labels.push_back(r->has("label") ? static_cast<int>(r->integer("label"))
                                       : static_cast<int>(pieces.size()));
    } else {
      r->fail(r->fields.front(), "unrecognized record '" + r->fields.front().value + "'");
    }
  }
  if (pieces.size() != d) {
    throw ParseError(reader.line(), 1,
                     "header declares " + std::to_string(d) + " pieces, found " +
                         std::to_string(pieces.size()));
  }
  std::vector<Region> regions;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    regions.emplace_back(std::move(halfspaces[i]), labels[i]);
  }
  std::optional<Region> dom;
  if (!domain.empty()) dom.emplace(std::move(domain), 0);
  return ConventionalPWL(n, std::move(regions), std::move(pieces), std::move(dom));
}

std::string to_text(const ConventionalPWL& model) {
  std::ostringstream out;
  write_conventional(out, model);
  return out.str();
}

}  // namespace pwlnn
