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

#include "pwlnn/repr/model_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

std::string affine_fields(const AffineFunction& f) {
  return "J=" + format_numbers(f.jacobian()) + " b=" + format_number(f.bias());
}

AffineFunction read_affine(const Record& r, std::size_t n) {
  const Vector j = r.numbers("J");
  if (static_cast<std::size_t>(j.size()) != n) {
    r.fail(r.field("J"), "jacobian has " + std::to_string(j.size()) + " entries, expected " +
                             std::to_string(n));
  }
  return AffineFunction(j, r.number("b"));
}

Record expect_tag(RecordReader& reader, const std::string& tag) {
  Record r = reader.expect("'" + tag + "' record");
  if (r.tag() != tag) {
    const Field& at = r.fields.front();
    r.fail(at, "expected '" + tag + "' record, found '" + at.value + "'");
  }
  return r;
}

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(separator, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? at : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

long long parse_integer(const Record& r, const Field& f, std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  long long value = 0;
  auto result = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || result.ec != std::errc() || result.ptr != body.data() + body.size()) {
    r.fail(f, "expected an integer, found '" + std::string(text) + "'");
  }
  return value;
}

// 1-based index in [1, limit] -> 0-based.
std::size_t parse_index(const Record& r, const Field& f, std::string_view text,
                        std::size_t limit, const char* what) {
  const long long v = parse_integer(r, f, text);
  if (v < 1 || static_cast<unsigned long long>(v) > limit) {
    r.fail(f, std::string(what) + " index " + std::string(text) + " out of range [1.." +
                  std::to_string(limit) + "]");
  }
  return static_cast<std::size_t>(v - 1);
}

int parse_sign(const Record& r, const Field& f, std::string_view text) {
  const long long v = parse_integer(r, f, text);
  if (v != 1 && v != -1) r.fail(f, "sign must be +1 or -1, found '" + std::string(text) + "'");
  return static_cast<int>(v);
}

std::string signed_text(int sign) { return sign > 0 ? "+1" : "-1"; }

void check_count(const Record& header, const char* key, std::size_t found, std::size_t line) {
  const std::size_t declared = header.count(key);
  if (declared != found) {
    throw ParseError(line, 1, std::string("header declares ") + key + "=" +
                                  std::to_string(declared) + ", found " + std::to_string(found));
  }
}

std::size_t read_dim(const Record& header) {
  const std::size_t n = header.count("dim");
  if (n == 0) header.fail(header.field("dim"), "dim must be positive");
  return n;
}

void write_node(std::ostream& out, const NestedCplrNode& node) {
  out << "node " << affine_fields(node.affine) << " terms=" << node.terms.size() << '\n';
  for (const auto& t : node.terms) {
    out << "abs c=" << format_number(t.coefficient) << '\n';
    write_node(out, t.inner);
  }
}

NestedCplrNode read_node(RecordReader& reader, std::size_t n) {
  const Record r = expect_tag(reader, "node");
  NestedCplrNode node{read_affine(r, n), {}};
  const std::size_t k = r.count("terms");
  for (std::size_t i = 0; i < k; ++i) {
    const Record a = expect_tag(reader, "abs");
    const double c = a.number("c");
    node.terms.push_back(NestedAbsTerm{c, read_node(reader, n)});
  }
  return node;
}

void reject_trailing(RecordReader& reader) {
  if (auto extra = reader.next()) {
    extra->fail(extra->fields.front(), "unexpected record '" + extra->fields.front().value + "'");
  }
}

}  // namespace

void write_model(std::ostream& out, const CplrModel& model) {
  out << "pwl-cplr v1 dim=" << model.dimension() << " terms=" << model.terms().size() << '\n';
  out << "linear " << affine_fields(model.linear()) << '\n';
  for (const auto& t : model.terms()) {
    out << "abs eta=" << signed_text(t.eta) << ' ' << affine_fields(t.inner) << '\n';
  }
}

CplrModel read_cplr(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "cplr");
  const std::size_t n = read_dim(header);
  const AffineFunction linear = read_affine(expect_tag(reader, "linear"), n);
  std::vector<CplrModel::Term> terms;
  while (auto r = reader.next()) {
    if (r->tag() != "abs") r->fail(r->fields.front(), "expected 'abs' record");
    const Field& eta = r->field("eta");
    terms.push_back(CplrModel::Term{parse_sign(*r, eta, eta.value), read_affine(*r, n)});
  }
  check_count(header, "terms", terms.size(), reader.line());
  return CplrModel(linear, std::move(terms));
}

void write_model(std::ostream& out, const NestedCplrModel& model) {
  out << "pwl-nested-cplr v1 dim=" << model.dimension() << '\n';
  write_node(out, model.root());
}

NestedCplrModel read_nested_cplr(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "nested-cplr");
  const std::size_t n = read_dim(header);
  NestedCplrNode root = read_node(reader, n);
  reject_trailing(reader);
  return NestedCplrModel(std::move(root));
}

void write_model(std::ostream& out, const HingeModel& model) {
  out << "pwl-hh v1 dim=" << model.dimension() << " hinges=" << model.hinges().size() << '\n';
  out << "linear " << affine_fields(model.linear()) << '\n';
  for (const auto& h : model.hinges()) {
    out << "hinge w=" << format_number(h.weight) << ' ' << affine_fields(h.inner) << '\n';
  }
}

HingeModel read_hinge(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "hh");
  const std::size_t n = read_dim(header);
  const AffineFunction linear = read_affine(expect_tag(reader, "linear"), n);
  std::vector<HingeModel::Hinge> hinges;
  while (auto r = reader.next()) {
    if (r->tag() != "hinge") r->fail(r->fields.front(), "expected 'hinge' record");
    hinges.push_back(HingeModel::Hinge{r->number("w"), read_affine(*r, n)});
  }
  check_count(header, "hinges", hinges.size(), reader.line());
  return HingeModel(linear, std::move(hinges));
}

void write_model(std::ostream& out, const GhhModel& model) {
  out << "pwl-ghh v1 dim=" << model.dimension() << " terms=" << model.terms().size() << '\n';
  for (const auto& t : model.terms()) {
    out << "term w=" << format_number(t.weight) << " affines=" << t.affines.size() << '\n';
    for (const auto& a : t.affines) out << "affine " << affine_fields(a) << '\n';
  }
}

GhhModel read_ghh(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "ghh");
  const std::size_t n = read_dim(header);
  std::vector<GhhModel::Term> terms;
  while (auto r = reader.next()) {
    if (r->tag() != "term") r->fail(r->fields.front(), "expected 'term' record");
    GhhModel::Term term{r->number("w"), {}};
    const std::size_t k = r->count("affines");
    if (k == 0) r->fail(r->field("affines"), "a GHH term needs at least one affine");
    for (std::size_t i = 0; i < k; ++i) term.affines.push_back(read_affine(expect_tag(reader, "affine"), n));
    terms.push_back(std::move(term));
  }
  check_count(header, "terms", terms.size(), reader.line());
  return GhhModel(n, std::move(terms));
}

void write_model(std::ostream& out, const HlCplrModel& model) {
  const double interval = model.terms().empty() ? 1.0 : model.terms().front().basis.interval();
  out << "pwl-hlcplr v1 dim=" << model.dimension() << " interval=" << format_number(interval)
      << " terms=" << model.terms().size() << '\n';
  out << "constant b=" << format_number(model.constant()) << '\n';
  for (const auto& t : model.terms()) {
    out << "basis w=" << format_number(t.weight) << " coords=";
    bool first = true;
    for (const auto& c : t.basis.coordinates()) {
      if (!first) out << ',';
      first = false;
      out << c.axis + 1 << ':' << c.knot;
    }
    out << '\n';
  }
}

HlCplrModel read_hlcplr(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "hlcplr");
  const std::size_t n = read_dim(header);
  const double interval = header.number("interval");
  if (!(interval > 0.0)) header.fail(header.field("interval"), "interval must be positive");
  const double constant = expect_tag(reader, "constant").number("b");
  std::vector<HlCplrModel::Term> terms;
  while (auto r = reader.next()) {
    if (r->tag() != "basis") r->fail(r->fields.front(), "expected 'basis' record");
    const Field& f = r->field("coords");
    std::vector<HlCplrBasis::Coordinate> coords;
    for (auto part : split(f.value, ',')) {
      const auto pieces = split(part, ':');
      if (pieces.size() != 2) r->fail(f, "coordinate must be axis:knot, found '" + std::string(part) + "'");
      coords.push_back({parse_index(*r, f, pieces[0], n, "axis"), parse_integer(*r, f, pieces[1])});
    }
    try {
      terms.push_back(HlCplrModel::Term{r->number("w"), HlCplrBasis(interval, std::move(coords))});
    } catch (const InvalidModel& e) {
      r->fail(f, e.what());
    }
  }
  check_count(header, "terms", terms.size(), reader.line());
  return HlCplrModel(n, constant, std::move(terms));
}

void write_model(std::ostream& out, const AhhModel& model) {
  out << "pwl-ahh v1 dim=" << model.dimension() << " bases=" << model.bases().size() << '\n';
  out << "constant w=" << format_number(model.constant()) << '\n';
  for (const auto& b : model.bases()) {
    out << "basis w=" << format_number(b.weight) << " factors=";
    bool first = true;
    for (const auto& f : b.factors) {
      if (!first) out << ',';
      first = false;
      out << signed_text(f.sign) << ':' << f.variable + 1 << ':' << format_number(f.knot);
    }
    out << '\n';
  }
}

AhhModel read_ahh(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "ahh");
  const std::size_t n = read_dim(header);
  const double constant = expect_tag(reader, "constant").number("w");
  std::vector<AhhModel::Basis> bases;
  while (auto r = reader.next()) {
    if (r->tag() != "basis") r->fail(r->fields.front(), "expected 'basis' record");
    const Field& f = r->field("factors");
    AhhModel::Basis basis{r->number("w"), {}};
    for (auto part : split(f.value, ',')) {
      const auto pieces = split(part, ':');
      if (pieces.size() != 3) {
        r->fail(f, "factor must be sign:variable:knot, found '" + std::string(part) + "'");
      }
      basis.factors.push_back({parse_sign(*r, f, pieces[0]),
                               parse_index(*r, f, pieces[1], n, "variable"),
                               parse_number(pieces[2], r->line, f.column)});
    }
    bases.push_back(std::move(basis));
  }
  check_count(header, "bases", bases.size(), reader.line());
  return AhhModel(n, constant, std::move(bases));
}

void write_model(std::ostream& out, const SbfModel& model) {
  out << "pwl-sbf v1 dim=" << model.dimension() << " bases=" << model.bases().size() << '\n';
  for (const auto& b : model.bases()) {
    out << "basis w=" << format_number(b.weight) << " gamma=" << format_numbers(b.gamma)
        << " center=" << format_numbers(b.center) << '\n';
  }
}

SbfModel read_sbf(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "sbf");
  const std::size_t n = read_dim(header);
  std::vector<SbfModel::Basis> bases;
  while (auto r = reader.next()) {
    if (r->tag() != "basis") r->fail(r->fields.front(), "expected 'basis' record");
    SbfModel::Basis b{r->number("w"), r->numbers("gamma"), r->numbers("center")};
    for (const char* key : {"gamma", "center"}) {
      const Vector& v = key[0] == 'g' ? b.gamma : b.center;
      if (static_cast<std::size_t>(v.size()) != n) {
        r->fail(r->field(key), std::string(key) + " has " + std::to_string(v.size()) +
                                   " entries, expected " + std::to_string(n));
      }
    }
    if ((b.gamma.array() < 0.0).any()) r->fail(r->field("gamma"), "gamma must be non-negative");
    bases.push_back(std::move(b));
  }
  check_count(header, "bases", bases.size(), reader.line());
  return SbfModel(n, std::move(bases));
}

void write_model(std::ostream& out, const LatticeModel& model) {
  out << "pwl-lattice v1 dim=" << model.dimension() << " affines=" << model.affines().size()
      << " rows=" << model.selections().size() << '\n';
  for (const auto& a : model.affines()) out << "affine " << affine_fields(a) << '\n';
  for (const auto& s : model.selections()) {
    out << "row S=";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i] + 1;
    out << '\n';
  }
}

LatticeModel read_lattice(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "lattice");
  const std::size_t n = read_dim(header);
  const std::size_t m = header.count("affines");
  std::vector<AffineFunction> affines;
  for (std::size_t i = 0; i < m; ++i) affines.push_back(read_affine(expect_tag(reader, "affine"), n));
  std::vector<std::vector<std::size_t>> rows;
  while (auto r = reader.next()) {
    if (r->tag() != "row") r->fail(r->fields.front(), "expected 'row' record");
    const Field& f = r->field("S");
    std::vector<std::size_t> row;
    for (auto part : split(f.value, ',')) row.push_back(parse_index(*r, f, part, m, "affine"));
    rows.push_back(std::move(row));
  }
  check_count(header, "rows", rows.size(), reader.line());
  return LatticeModel(std::move(affines), std::move(rows));
}

}  // namespace pwlnn
