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

#include "pwlnn/dnn/network_io.hpp"

#include <ostream>

#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

void write_rows(std::ostream& out, const Matrix& w, const Vector& b) {
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    out << "row w=" << format_numbers(w.row(r).transpose()) << " b=" << format_number(b[r]) << '\n';
  }
}

void read_rows(RecordReader& reader, std::size_t rows, std::size_t cols, Matrix& w, Vector& b) {
  w.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  b.resize(static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const Record rec = reader.expect("a 'row' record");
    if (rec.tag() != "row") rec.fail(rec.fields.front(), "expected 'row', found '" + rec.fields.front().value + "'");
    const Vector values = rec.numbers("w");
    if (static_cast<std::size_t>(values.size()) != cols) {
      rec.fail(rec.field("w"), "row has " + std::to_string(values.size()) + " weights, expected " +
                                   std::to_string(cols));
    }
    w.row(static_cast<Eigen::Index>(r)) = values.transpose();
    b[static_cast<Eigen::Index>(r)] = rec.number("b");
  }
}

}  // namespace

void write_network(std::ostream& out, const Network& net) {
  out << "pwl-net v1 inputs=" << net.input_size() << " outputs=" << net.output_size()
      << " layers=" << net.hidden().size() << '\n';
  for (const auto& layer : net.hidden()) {
    out << "layer units=" << layer.units() << " activation=" << layer.activation.descriptor() << '\n';
    write_rows(out, layer.weights, layer.bias);
    for (Eigen::Index u = 0; u < layer.parameters.rows() && layer.parameters.cols() > 0; ++u) {
      out << "param p=" << format_numbers(layer.parameters.row(u).transpose()) << '\n';
    }
  }
  out << "output\n";
  write_rows(out, net.output_weights(), net.output_bias());
}

Network read_network(std::istream& in) {
  RecordReader reader(in);
  const Record header = read_header(reader, "net");
  const std::size_t inputs = header.count("inputs");
  const std::size_t outputs = header.count("outputs");
  const std::size_t layers = header.count("layers");
  if (inputs == 0) header.fail(header.field("inputs"), "inputs must be positive");
  if (outputs == 0) header.fail(header.field("outputs"), "outputs must be positive");

  std::vector<Layer> hidden;
  std::size_t width = inputs;
  for (std::size_t k = 0; k < layers; ++k) {
    const Record rec = reader.expect("a 'layer' record");
    if (rec.tag() != "layer") rec.fail(rec.fields.front(), "expected 'layer', found '" + rec.fields.front().value + "'");
    Layer layer;
    try {
      layer.activation = Activation::parse(rec.text("activation"));
    } catch (const Error& e) {
      rec.fail(rec.field("activation"), e.what());
    }
    const std::size_t units = rec.count("units");
    if (units == 0) rec.fail(rec.field("units"), "units must be positive");
    read_rows(reader, units * layer.activation.inputs_per_unit(), width, layer.weights, layer.bias);
    const std::size_t pc = layer.activation.parameter_count();
    layer.parameters.resize(static_cast<Eigen::Index>(units), static_cast<Eigen::Index>(pc));
    for (std::size_t u = 0; pc > 0 && u < units; ++u) {
      const Record p = reader.expect("a 'param' record");
      if (p.tag() != "param") p.fail(p.fields.front(), "expected 'param', found '" + p.fields.front().value + "'");
      const Vector values = p.numbers("p");
      if (static_cast<std::size_t>(values.size()) != pc) {
        p.fail(p.field("p"), "unit has " + std::to_string(values.size()) + " parameters, expected " +
                                 std::to_string(pc));
      }
      layer.parameters.row(static_cast<Eigen::Index>(u)) = values.transpose();
    }
    width = units;
    hidden.push_back(std::move(layer));
  }
  const Record out = reader.expect("an 'output' record");
  if (out.tag() != "output") out.fail(out.fields.front(), "expected 'output', found '" + out.fields.front().value + "'");
  Matrix w;
  Vector b;
  read_rows(reader, outputs, width, w, b);
  if (auto extra = reader.next()) extra->fail(extra->fields.front(), "unexpected record after the output layer");
  return Network(std::move(hidden), std::move(w), std::move(b));
}

}  // namespace pwlnn
