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

#include "pwlnn/transforms/any_model.hpp"

#include <sstream>

#include "pwlnn/core/conventional_io.hpp"
#include "pwlnn/core/text_io.hpp"
#include "pwlnn/repr/model_io.hpp"
#include "pwlnn/transforms/lattice_builder.hpp"
#include "pwlnn/transforms/to_dc.hpp"

namespace pwlnn {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::string kind_of(const AnyModel& model) {
  return std::visit(Overloaded{
                        [](const ConventionalPWL&) { return "conventional"; },
                        [](const CplrModel&) { return "cplr"; },
                        [](const NestedCplrModel&) { return "nested-cplr"; },
                        [](const HingeModel&) { return "hh"; },
                        [](const GhhModel&) { return "ghh"; },
                        [](const HlCplrModel&) { return "hlcplr"; },
                        [](const AhhModel&) { return "ahh"; },
                        [](const SbfModel&) { return "sbf"; },
                        [](const LatticeModel&) { return "lattice"; },
                        [](const DcForm&) { return "dc"; },
                    },
                    model);
}

bool is_model_kind(const std::string& kind) {
  for (const char* k : {"conventional", "cplr", "nested-cplr", "hh", "ghh", "hlcplr", "ahh",
                        "sbf", "lattice", "dc"}) {
    if (kind == k) return true;
  }
  return false;
}

AnyModel read_any_model_text(const std::string& text) {
  const std::string kind = peek_kind(text);
  std::istringstream in(text);
  if (kind == "conventional") return read_conventional(in);
  if (kind == "cplr") return read_cplr(in);
  if (kind == "nested-cplr") return read_nested_cplr(in);
  if (kind == "hh") return read_hinge(in);
  if (kind == "ghh") return read_ghh(in);
  if (kind == "hlcplr") return read_hlcplr(in);
  if (kind == "ahh") return read_ahh(in);
  if (kind == "sbf") return read_sbf(in);
  if (kind == "lattice") return read_lattice(in);
  if (kind == "dc") return read_dc(in);
  throw ParseError(1, 1, "unknown model kind '" + kind + "'");
}

AnyModel read_any_model(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_any_model_text(buffer.str());
}

void write_any_model(std::ostream& out, const AnyModel& model) {
  std::visit(Overloaded{
                 [&](const ConventionalPWL& m) { write_conventional(out, m); },
                 [&](const auto& m) { write_model(out, m); },
             },
             model);
}

std::string any_model_text(const AnyModel& model) {
  std::ostringstream out;
  write_any_model(out, model);
  return out.str();
}

std::size_t dimension_of(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.dimension(); }, model);
}

double evaluate(const AnyModel& model, const Vector& x) {
  return std::visit(Overloaded{
                        [&](const ConventionalPWL& m) { return m(x); },
                        [&](const auto& m) { return evaluate(m, x); },
                    },
                    model);
}

DcForm to_dc(const AnyModel& model) {
  return std::visit(Overloaded{
                        [](const ConventionalPWL& m) { return to_dc(lattice_from_conventional(m)); },
                        [](const DcForm& m) { return m; },
                        [](const auto& m) { return to_dc(m); },
                    },
                    model);
}

}  // namespace pwlnn
