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

#include "pwlnn/learning/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "pwlnn/core/error.hpp"
#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool all_numeric(const std::vector<std::string>& cells, std::size_t line) {
  for (const auto& c : cells) {
    try {
      parse_number(c, line, 1);
    } catch (const ParseError&) {
      return false;
    }
  }
  return true;
}

}  // namespace

Dataset::Dataset(Matrix inputs, Vector targets, std::vector<std::string> names)
    : inputs_(std::move(inputs)), targets_(std::move(targets)), names_(std::move(names)) {
  if (inputs_.rows() == 0) throw InvalidModel("dataset needs at least one sample");
  if (inputs_.cols() == 0) throw InvalidModel("dataset needs at least one input column");
  require_dimension(static_cast<std::size_t>(inputs_.rows()),
                    static_cast<std::size_t>(targets_.size()), "dataset targets");
  if (!inputs_.allFinite() || !targets_.allFinite()) {
    throw InvalidModel("dataset contains non-finite values");
  }
}

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), inputs_.cols());
  Vector y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = inputs_.row(static_cast<Eigen::Index>(rows[i]));
    y[static_cast<Eigen::Index>(i)] = targets_[static_cast<Eigen::Index>(rows[i])];
  }
  return Dataset(std::move(x), std::move(y), names_);
}

CsvTable read_csv(std::istream& in, std::optional<bool> header) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t number = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    if (first) {
      first = false;
      const bool is_header = header ? *header : !all_numeric(cells, number);
      width = cells.size();
      if (is_header) {
        table.header = cells;
        continue;
      }
    }
    if (cells.size() != width) {
      throw ParseError(number, 1, "row has " + std::to_string(cells.size()) +
                                      " columns, expected " + std::to_string(width));
    }
    std::vector<double> row;
    std::size_t column = 1;
    for (const auto& c : cells) {
      row.push_back(parse_number(c, number, column));
      column += c.size() + 1;
    }
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

Dataset read_dataset(std::istream& in, std::optional<bool> header) {
  CsvTable table = read_csv(in, header);
  if (table.values.cols() < 2) throw InvalidModel("dataset needs input columns and a target column");
  const Eigen::Index n = table.values.cols() - 1;
  std::vector<std::string> names;
  if (!table.header.empty()) names.assign(table.header.begin(), table.header.end() - 1);
  return Dataset(table.values.leftCols(n), table.values.col(n), std::move(names));
}

Dataset load_dataset(const std::string& path, std::optional<bool> header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  return read_dataset(in, header);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_numbers(data.point(i)) << ',' << format_number(data.targets()[static_cast<Eigen::Index>(i)])
        << '\n';
  }
}

}  // namespace pwlnn
