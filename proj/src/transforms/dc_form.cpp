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

#include "pwlnn/transforms/dc_form.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

std::vector<AffineFunction> canonical(std::vector<AffineFunction> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.size() > kDcSizeLimit) throw DcSizeExceeded(set.size());
  return set;
}

std::vector<AffineFunction> minkowski(const std::vector<AffineFunction>& a,
                                      const std::vector<AffineFunction>& b) {
  if (a.size() * b.size() > kDcSizeLimit * 4) throw DcSizeExceeded(a.size() * b.size());
  std::vector<AffineFunction> out;
  out.reserve(a.size() * b.size());
  for (const auto& p : a) {
    for (const auto& q : b) out.push_back(p + q);
  }
  return canonical(std::move(out));
}

std::vector<AffineFunction> join(std::vector<AffineFunction> a, const std::vector<AffineFunction>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return canonical(std::move(a));
}

double max_of(const std::vector<AffineFunction>& set, const Vector& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : set) best = std::max(best, f(x));
  return best;
}

void check_pair(const DcForm& f, const DcForm& g) {
  require_dimension(f.dimension(), g.dimension(), "DC operand");
}

}  // namespace

DcSizeExceeded::DcSizeExceeded(std::size_t size)
    : Error("DC affine set grew to " + std::to_string(size) + " elements, limit is " +
            std::to_string(kDcSizeLimit)),
      size_(size) {}

DcForm::DcForm(std::vector<AffineFunction> plus, std::vector<AffineFunction> minus)
    : plus_(canonical(std::move(plus))), minus_(canonical(std::move(minus))) {
  if (plus_.empty() || minus_.empty()) throw InvalidModel("DC form needs non-empty plus and minus sets");
  if (plus_.front().dimension() == 0) throw InvalidModel("DC form needs a positive dimension");
  for (const auto& f : plus_) require_dimension(dimension(), f.dimension(), "DC plus set");
  for (const auto& f : minus_) require_dimension(dimension(), f.dimension(), "DC minus set");
}

DcForm DcForm::affine(const AffineFunction& f) {
  return DcForm({f}, {AffineFunction::zero(f.dimension())});
}

double evaluate(const DcForm& f, const Vector& x) {
  require_dimension(f.dimension(), static_cast<std::size_t>(x.size()), "DC evaluation");
  return max_of(f.plus(), x) - max_of(f.minus(), x);
}

DcForm dc_sum(const DcForm& f, const DcForm& g) {
  check_pair(f, g);
  return DcForm(minkowski(f.plus(), g.plus()), minkowski(f.minus(), g.minus()));
}

DcForm dc_negate(const DcForm& f) { return DcForm(f.minus(), f.plus()); }

DcForm dc_scale(const DcForm& f, double c) {
  auto scaled = [&](const std::vector<AffineFunction>& set) {
    std::vector<AffineFunction> out;
    for (const auto& a : set) out.push_back(a * std::abs(c));
    return out;
  };
  if (c < 0) return DcForm(scaled(f.minus()), scaled(f.plus()));
  return DcForm(scaled(f.plus()), scaled(f.minus()));
}

DcForm dc_max(const DcForm& f, const DcForm& g) {
  check_pair(f, g);
  return DcForm(join(minkowski(f.plus(), g.minus()), minkowski(g.plus(), f.minus())),
                minkowski(f.minus(), g.minus()));
}

DcForm dc_min(const DcForm& f, const DcForm& g) {
  return dc_negate(dc_max(dc_negate(f), dc_negate(g)));
}

DcForm dc_abs(const DcForm& f) { return dc_max(f, dc_negate(f)); }

GhhModel ghh_from_dc(const DcForm& f) {
  return GhhModel(f.dimension(), {GhhModel::Term{1.0, f.plus()}, GhhModel::Term{-1.0, f.minus()}});
}

void write_model(std::ostream& out, const DcForm& f) {
  out << "pwl-dc v1 dim=" << f.dimension() << " plus=" << f.plus().size()
      << " minus=" << f.minus().size() << '\n';
  for (const auto& a : f.plus()) {
    out << "plus J=" << format_numbers(a.jacobian()) << " b=" << format_number(a.bias()) << '\n';
  }
  for (const auto& a : f.minus()) {
    out << "minus J=" << format_numbers(a.jacobian()) << " b=" << format_number(a.bias()) << '\n';
  }
}

DcForm read_dc(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "dc");
  const std::size_t n = header.count("dim");
  if (n == 0) header.fail(header.field("dim"), "dim must be positive");
  std::vector<AffineFunction> plus;
  std::vector<AffineFunction> minus;
  while (auto r = reader.next()) {
    const std::string tag = r->tag();
    if (tag != "plus" && tag != "minus") r->fail(r->fields.front(), "expected 'plus' or 'minus' record");
    const Vector j = r->numbers("J");
    if (static_cast<std::size_t>(j.size()) != n) {
      r->fail(r->field("J"), "jacobian has " + std::to_string(j.size()) + " entries, expected " +
                                 std::to_string(n));
    }
    (tag == "plus" ? plus : minus).emplace_back(j, r->number("b"));
  }
  if (plus.size() != header.count("plus") || minus.size() != header.count("minus")) {
    throw ParseError(reader.line(), 1, "affine counts do not match the header");
  }
  return DcForm(std::move(plus), std::move(minus));
}

}  // namespace pwlnn
