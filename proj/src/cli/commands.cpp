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

#include "pwlnn/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "pwlnn/cli/config.hpp"
#include "pwlnn/core/analysis.hpp"
#include "pwlnn/core/text_io.hpp"
#include "pwlnn/dnn/network_io.hpp"
#include "pwlnn/dnn/regions.hpp"
#include "pwlnn/learning/fit_ahh.hpp"
#include "pwlnn/learning/fit_sbf.hpp"
#include "pwlnn/learning/hinge_finding.hpp"
#include "pwlnn/repr/model_io.hpp"
#include "pwlnn/transforms/any_model.hpp"
#include "pwlnn/transforms/cplr_builder.hpp"
#include "pwlnn/transforms/equivalence.hpp"
#include "pwlnn/transforms/lattice_builder.hpp"

namespace pwlnn {

namespace {

// Library failure during fitting.
class FitFailure : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A model file of any kind, networks included.
struct Loaded {
  std::string kind;
  std::optional<AnyModel> model;
  std::optional<Network> net;

  std::size_t dimension() const { return net ? net->input_size() : dimension_of(*model); }
  std::size_t outputs() const { return net ? net->output_size() : 1; }
  Vector operator()(const Vector& x) const {
    if (net) return forward(*net, x);
    Vector y(1);
    y[0] = evaluate(*model, x);
    return y;
  }
  Evaluator scalar() const {
    return [this](const Vector& x) { return (*this)(x)[0]; };
  }
};

Loaded load_model(const std::string& path) {
  const std::string text = read_file(path);
  Loaded m;
  m.kind = peek_kind(text);
  if (m.kind == "net") {
    std::istringstream in(text);
    m.net = read_network(in);
  } else {
    m.model = read_any_model_text(text);
  }
  return m;
}

// 2^k + 1 points per axis keep grid coordinates dyadic on dyadic boxes.
std::size_t default_density(std::size_t n) {
  switch (n) {
    case 1: return 1025;
    case 2: return 129;
    case 3: return 33;
    default: return 9;
  }
}

constexpr double kDefaultHalfWidth = 4.0;

Box resolve_box(const std::string& spec, const Loaded& m) {
  if (!spec.empty()) return parse_box(spec, m.dimension());
  if (m.model) {
    if (const auto* c = std::get_if<ConventionalPWL>(&*m.model)) {
      if (auto b = declared_bounds(*c)) return *b;
    }
  }
  return Box::cube(m.dimension(), -kDefaultHalfWidth, kDefaultHalfWidth);
}

std::string box_text(const Box& box) {
  std::string s;
  for (Eigen::Index i = 0; i < box.lower.size(); ++i) {
    if (i > 0) s += ',';
    s += format_number(box.lower[i]) + ":" + format_number(box.upper[i]);
  }
  return s;
}

std::string join(const std::vector<std::size_t>& v, std::size_t offset = 0) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(v[i] + offset);
  }
  return s;
}

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

void write_points_csv(std::ostream& out, const Loaded& m, const std::vector<Vector>& points) {
  if (points.empty()) return;
  for (std::size_t i = 0; i < m.dimension(); ++i) out << (i > 0 ? "," : "") << 'x' << i + 1;
  if (m.outputs() == 1) {
    out << ",f\n";
  } else {
    for (std::size_t j = 0; j < m.outputs(); ++j) out << ",f" << j + 1;
    out << '\n';
  }
  for (const auto& x : points) {
    const Vector y = m(x);
    out << format_numbers(x) << ',' << format_numbers(y) << '\n';
  }
}

// ---- fit ----------------------------------------------------------------

struct FitArgs {
  std::string data;
  std::string kind;
  std::string out;
  std::string trace;
  std::string config;
  std::map<std::string, std::string> flags;
};

double model_rmse(const std::function<double(const Vector&)>& f, const Dataset& d) {
  if (d.size() == 0) return 0.0;
  Vector r(static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) r[static_cast<Eigen::Index>(i)] = f(d.point(i)) - d.targets()[static_cast<Eigen::Index>(i)];
  return rmse(r);
}

int cmd_fit(const FitArgs& a, CLI::App& sub, std::ostream& out) {
  Settings settings;
  if (!a.config.empty()) settings = load_settings(a.config);
  for (const auto& key : setting_keys()) {
    if (sub.count(dashed(key)) > 0) settings[key] = a.flags.at(key);
  }
  const FitSettings s = apply_settings(settings);
  const Dataset data = load_dataset(a.data);
  if (data.size() == 0) throw Error("dataset '" + a.data + "' has no samples");
  const std::string trace_path = a.trace.empty() ? a.out + ".trace.csv" : a.trace;

  const DataSplit split = split_dataset(data, s.fit.validation_fraction, s.fit.seed);
  std::string model_text;
  std::string trace_text;
  std::size_t terms = 0;
  std::function<double(const Vector&)> f;
  std::optional<HingeModel> hh;
  std::optional<AhhModel> ahh;
  std::optional<SbfModel> sbf;
  std::optional<Network> net;
  try {
    std::ostringstream m;
    if (a.kind == "hh") {
      auto fit = fit_hh(data, s.fit);
      hh = fit.model;
      terms = hh->hinges().size();
      write_model(m, *hh);
      trace_text = trace_csv(fit.trace);
      f = [&](const Vector& x) { return evaluate(*hh, x); };
    } else if (a.kind == "ahh") {
      auto fit = fit_ahh(data, s.fit);
      ahh = fit.model;
      terms = ahh->bases().size();
      write_model(m, *ahh);
      trace_text = trace_csv(fit.trace);
      f = [&](const Vector& x) { return evaluate(*ahh, x); };
    } else if (a.kind == "sbf") {
      auto fit = fit_sbf(data, s.fit);
      sbf = fit.model;
      terms = sbf->bases().size();
      write_model(m, *sbf);
      trace_text = trace_csv(fit.trace);
      f = [&](const Vector& x) { return evaluate(*sbf, x); };
    } else {
      std::vector<Activation> acts(s.layers.size(), Activation::parse(s.activation));
      Network initial = Network::zeros(data.dimension(), s.layers, acts);
      init_parameters(initial, s.train.init, s.train.seed);
      auto result = train_sgd(std::move(initial), split.train, s.train);
      net = std::move(result.net);
      terms = net->hidden_units();
      write_network(m, *net);
      std::ostringstream t;
      write_loss_curve(t, result.loss_curve);
      trace_text = t.str();
      f = [&](const Vector& x) { return forward_scalar(*net, x); };
    }
    model_text = m.str();
  } catch (const Error& e) {
    throw FitFailure(e.what());
  }
  write_file_atomic(a.out, model_text);
  write_file_atomic(trace_path, trace_text);

  // The representation fitters split internally with the same seed.
  out << "kind: " << a.kind << '\n'
      << "samples: " << data.size() << '\n'
      << "train_size: " << split.train.size() << '\n'
      << "validation_size: " << (split.shared ? 0 : split.validation.size()) << '\n'
      << "terms: " << terms << '\n';
  if (net) out << "parameters: " << net->parameter_count() << '\n';
  out << "train_rmse: " << format_number(model_rmse(f, split.train)) << '\n'
      << "validation_rmse: " << format_number(model_rmse(f, split.validation)) << '\n'
      << "full_rmse: " << format_number(model_rmse(f, data)) << '\n'
      << "seed: " << s.fit.seed << '\n'
      << "model: " << a.out << '\n'
      << "trace: " << trace_path << '\n';
  return kExitOk;
}

// ---- eval ---------------------------------------------------------------

int cmd_eval(const std::string& model_path, const std::string& points_path, const std::string& grid,
             const std::string& out_path, std::ostream& out) {
  if (points_path.empty() == grid.empty()) throw UsageError("eval needs exactly one of --points or --grid");
  const Loaded m = load_model(model_path);
  std::vector<Vector> points;
  if (!grid.empty()) {
    points = parse_grid(grid, m.dimension());
  } else {
    std::ifstream in(points_path);
    if (!in) throw Error("cannot read '" + points_path + "'");
    const CsvTable table = read_csv(in);
    if (table.values.rows() > 0) require_dimension(m.dimension(), static_cast<std::size_t>(table.values.cols()), "points file");
    for (Eigen::Index r = 0; r < table.values.rows(); ++r) points.push_back(table.values.row(r).transpose());
  }
  std::ostringstream csv;
  write_points_csv(csv, m, points);
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(out_path, csv.str());
  }
  return kExitOk;
}

// ---- convert ------------------------------------------------------------

const char* kSupportedPaths =
    "conventional->lattice, conventional->cplr, <any model>->dc, dc->ghh, cplr->hh, hh->cplr (1-D)";

void print_certificate(std::ostream& out, const VariationCertificate& c) {
  out << "certificate_plane: normal=" << format_numbers(c.plane.normal)
      << " offset=" << format_number(c.plane.offset) << '\n'
      << "certificate_reason: " << c.reason << '\n';
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    out << "certificate_witness: at=" << format_numbers(c.witnesses[i]);
    if (i < c.jumps.size()) out << " jump=" << format_number(c.jumps[i]);
    out << '\n';
  }
}

int cmd_convert(const std::string& model_path, const std::string& target, const std::string& out_path,
                const std::string& box_spec, std::size_t density, std::ostream& out) {
  const Loaded m = load_model(model_path);
  if (m.net) throw Error(std::string("unsupported conversion net->") + target + "; supported: " + kSupportedPaths);
  const AnyModel& src = *m.model;
  const Box box = resolve_box(box_spec, m);
  std::optional<AnyModel> result;
  const auto* conventional = std::get_if<ConventionalPWL>(&src);
  if (m.kind == "conventional" && target == "lattice") {
    result = lattice_from_conventional(*conventional, kDefaultLatticeDensity,
                                       declared_bounds(*conventional) ? std::nullopt : std::optional<Box>(box));
  } else if (m.kind == "conventional" && target == "cplr") {
    try {
      result = cplr_from_consistent(*conventional);
    } catch (const NotCplrRepresentable& e) {
      out << "source: conventional\n"
          << "target: cplr\n"
          << "verdict: not-representable\n";
      print_certificate(out, e.certificate());
      throw;
    }
  } else if (target == "dc") {
    result = to_dc(src);
  } else if (m.kind == "dc" && target == "ghh") {
    result = ghh_from_dc(std::get<DcForm>(src));
  } else if (m.kind == "cplr" && target == "hh") {
    result = hinge_from_cplr(std::get<CplrModel>(src));
  } else if (m.kind == "hh" && target == "cplr" && m.dimension() == 1) {
    result = cplr_from_hinge(std::get<HingeModel>(src));
  } else {
    throw Error("unsupported conversion " + m.kind + "->" + target + "; supported: " + kSupportedPaths);
  }

  const AnyModel& built = *result;
  const std::size_t grid = density > 0 ? density : default_density(m.dimension());
  const auto report = check_equivalence(m.scalar(), [&](const Vector& x) { return evaluate(built, x); }, box, grid);
  out << "source: " << m.kind << '\n' << "target: " << kind_of(built) << '\n';
  if (const auto* lattice = std::get_if<LatticeModel>(&built)) {
    out << "affines: " << lattice->affines().size() << '\n';
    for (std::size_t i = 0; i < lattice->selections().size(); ++i) {
      out << 'S' << i + 1 << ": " << join(lattice->selections()[i], 1) << '\n';
    }
  }
  out << "box: " << box_text(box) << '\n' << format_report(report);
  if (!report.equivalent) {
    out << "output: not written\n";
    return kExitViolations;
  }
  write_file_atomic(out_path, any_model_text(built));
  out << "output: " << out_path << '\n';
  return kExitOk;
}

// ---- validate -----------------------------------------------------------

double lipschitz_of(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConventionalPWL>) {
          return m.max_jacobian_norm();
        } else if constexpr (std::is_same_v<T, DcForm>) {
          double bound = 0.0;
          double minus = 0.0;
          for (const auto& a : m.plus()) bound = std::max(bound, a.jacobian().norm());
          for (const auto& a : m.minus()) minus = std::max(minus, a.jacobian().norm());
          return bound + minus;
        } else {
          return lipschitz_bound(m);
        }
      },
      model);
}

int cmd_validate(const std::string& model_path, std::ostream& out) {
  const Loaded m = load_model(model_path);
  out << "kind: " << m.kind << '\n' << "dimension: " << m.dimension() << '\n';
  if (m.net) {
    out << "hidden_units: " << m.net->hidden_units() << '\n'
        << "parameters: " << m.net->parameter_count() << '\n'
        << "continuity: ok\n";
    return kExitOk;
  }
  const auto* c = std::get_if<ConventionalPWL>(&*m.model);
  if (!c) {
    out << "continuity: ok\n" << "lipschitz_bound: " << format_number(lipschitz_of(*m.model)) << '\n';
    return kExitOk;
  }
  out << "pieces: " << c->size() << '\n';
  const ContinuityReport report = check_continuity(*c);
  out << "witnesses: " << report.witnesses << '\n';
  if (!report.continuous()) {
    out << "continuity: violated\n" << "violations: " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
      out << "violation: regions=" << v.label_a << ',' << v.label_b << " at=" << format_numbers(v.point)
          << " values=" << format_number(v.value_a) << ',' << format_number(v.value_b) << '\n';
    }
    out << "consistent_variation: skipped\n";
    return kExitViolations;
  }
  out << "continuity: ok\n";
  const auto cv = check_consistent_variation(*c);
  out << "consistent_variation: " << (cv.representable ? "representable" : "not-representable") << '\n';
  for (const auto& j : cv.jumps) {
    out << "jump: normal=" << format_numbers(j.plane.normal) << " offset=" << format_number(j.plane.offset)
        << " c=" << format_number(j.jump) << '\n';
  }
  if (cv.certificate) print_certificate(out, *cv.certificate);
  return kExitOk;
}

// ---- regions ------------------------------------------------------------

int cmd_regions(const std::string& path, const std::string& box_spec, const std::string& method,
                const std::string& certificates, std::size_t density, std::ostream& out) {
  const Loaded m = load_model(path);
  if (!m.net) throw Error("regions needs a pwl-net file, got '" + m.kind + "'");
  const Network& net = *m.net;
  const RegionMethod how = parse_region_method(method);
  const Box box = resolve_box(box_spec, m);
  RegionOptions options;
  options.grid_density = density;
  const RegionCount r = count_regions(net, box, how, options);
  out << "method: " << region_method_name(how) << '\n'
      << "box: " << box_text(box) << '\n'
      << "hidden_units: " << net.hidden_units() << '\n'
      << "count: " << r.count << '\n';
  const bool single_kink = net.hidden().size() == 1 && net.hidden()[0].activation.kind() != ActivationKind::Maxout &&
                           net.hidden()[0].activation.kind() != ActivationKind::SReLU &&
                           net.hidden()[0].activation.kind() != ActivationKind::APL;
  if (single_kink) {
    out << "zaslavsky_bound: " << zaslavsky_bound(net.hidden_units(), net.input_size()) << '\n';
  } else {
    out << "zaslavsky_bound: n/a\n";
  }
  std::ostringstream csv;
  write_region_certificates(csv, r);
  if (certificates.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(certificates, csv.str());
    out << "certificates: " << certificates << '\n';
  }
  return kExitOk;
}

// ---- equiv --------------------------------------------------------------

int cmd_equiv(const std::string& a_path, const std::string& b_path, const std::string& box_spec,
              std::size_t density, double tolerance, std::ostream& out) {
  const Loaded a = load_model(a_path);
  const Loaded b = load_model(b_path);
  require_dimension(a.dimension(), b.dimension(), "second model");
  const bool b_bounded = b.model && std::holds_alternative<ConventionalPWL>(*b.model) &&
                         declared_bounds(std::get<ConventionalPWL>(*b.model));
  const Box box = resolve_box(box_spec, box_spec.empty() && b_bounded ? b : a);
  const std::size_t grid = density > 0 ? density : default_density(a.dimension());
  const auto report = check_equivalence(a.scalar(), b.scalar(), box, grid, tolerance);
  out << "box: " << box_text(box) << '\n' << format_report(report);
  return report.equivalent ? kExitOk : kExitViolations;
}

// ---- trace-export -------------------------------------------------------

int cmd_trace_export(const std::string& path, const std::string& out_path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::string header;
  std::getline(in, header);
  std::vector<std::string> series;
  const std::size_t step_column = 0;
  std::vector<std::size_t> columns;
  if (header == "round,terms,train_sse,val_sse,action") {
    series = {"terms", "train_sse", "val_sse"};
    columns = {1, 2, 3};
  } else if (header == "epoch,loss") {
    series = {"loss"};
    columns = {1};
  } else {
    throw ParseError(1, 1, "not a fit trace or loss curve header: '" + header + "'");
  }
  std::ostringstream csv;
  csv << "series,step,value\n";
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() <= columns.back()) throw ParseError(number, 1, "too few columns");
    for (std::size_t c : columns) parse_number(cells[c], number, 1);
    rows.push_back(std::move(cells));
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (const auto& cells : rows) csv << series[s] << ',' << cells[step_column] << ',' << cells[columns[s]] << '\n';
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(out_path, csv.str());
    out << "series: " << series.size() << '\n' << "points: " << rows.size() << '\n' << "output: " << out_path << '\n';
  }
  return kExitOk;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw Error("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot replace '" + path + "': " + ec.message());
  }
}

std::vector<Vector> parse_grid(const std::string& spec, std::size_t dimension) {
  std::vector<std::string> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) axes.push_back(part);
  if (axes.size() == 1 && dimension > 1) axes.assign(dimension, axes.front());
  if (axes.size() != dimension) {
    throw DimensionMismatch(dimension, axes.size(), "grid axes");
  }
  std::vector<std::vector<double>> values(dimension);
  double total = 1.0;
  for (std::size_t i = 0; i < dimension; ++i) {
    const auto c1 = axes[i].find(':');
    const auto c2 = c1 == std::string::npos ? c1 : axes[i].find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("grid axis '" + axes[i] + "' is not a:b:step");
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    try {
      lo = parse_number(axes[i].substr(0, c1), 1, 1);
      hi = parse_number(axes[i].substr(c1 + 1, c2 - c1 - 1), 1, 1);
      step = parse_number(axes[i].substr(c2 + 1), 1, 1);
    } catch (const ParseError&) {
      throw UsageError("grid axis '" + axes[i] + "' is not a:b:step");
    }
    if (!(step > 0.0) || !(hi >= lo)) throw UsageError("grid axis '" + axes[i] + "' needs a <= b and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) values[i].push_back(lo + static_cast<double>(k) * step);
    total *= static_cast<double>(count);
  }
  if (total > 1e7) throw UsageError("grid has more than 10000000 points");
  std::vector<Vector> points;
  std::vector<std::size_t> idx(dimension, 0);
  while (true) {
    Vector x(static_cast<Eigen::Index>(dimension));
    for (std::size_t i = 0; i < dimension; ++i) x[static_cast<Eigen::Index>(i)] = values[i][idx[i]];
    points.push_back(std::move(x));
    std::size_t axis = dimension;
    while (axis > 0) {
      --axis;
      if (++idx[axis] < values[axis].size()) break;
      idx[axis] = 0;
      if (axis == 0) return points;
    }
    if (dimension == 0) return points;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise-linear model fitting, conversion and analysis", "pwlnn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pwlnn 1.0.0");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model to a CSV dataset (last column is the target)");
  fit_cmd->add_option("--data", fit.data, "Dataset CSV")->required();
  fit_cmd->add_option("--kind", fit.kind, "Model kind")->required()->check(CLI::IsMember({"hh", "ahh", "sbf", "dnn"}));
  fit_cmd->add_option("--out", fit.out, "Model file to write")->required();
  fit_cmd->add_option("--trace", fit.trace, "Trace CSV (default: <out>.trace.csv)");
  fit_cmd->add_option("--config", fit.config, "Settings file with key = value lines");
  for (const auto& key : setting_keys()) fit_cmd->add_option(dashed(key), fit.flags[key], "Overrides '" + key + "'");

  std::string model;
  std::string points;
  std::string grid;
  std::string output;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model at points");
  eval_cmd->add_option("model", model, "Model file")->required();
  eval_cmd->add_option("--points", points, "CSV of input points");
  eval_cmd->add_option("--grid", grid, "a:b:step[,a:b:step...]");
  eval_cmd->add_option("--out", output, "Output CSV (default: stdout)");

  std::string target;
  std::string box;
  std::size_t density = 0;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between representations and check equivalence");
  convert_cmd->add_option("model", model, "Model file")->required();
  convert_cmd->add_option("--to", target, "Target kind")->required();
  convert_cmd->add_option("--out", output, "Model file to write")->required();
  convert_cmd->add_option("--box", box, "Equivalence box a:b[,a:b...]");
  convert_cmd->add_option("--density", density, "Equivalence grid points per axis");

  auto* validate_cmd = app.add_subcommand("validate", "Check continuity and CPLR representability");
  validate_cmd->add_option("model", model, "Model file")->required();

  std::string method = "pattern-enumeration";
  std::string certificates;
  auto* regions_cmd = app.add_subcommand("regions", "Count the linear regions of a network");
  regions_cmd->add_option("network", model, "pwl-net file")->required();
  regions_cmd->add_option("--box", box, "Box a:b[,a:b...]");
  regions_cmd->add_option("--method", method, "pattern-enumeration or grid-probe");
  regions_cmd->add_option("--certificates", certificates, "Region certificate CSV (default: stdout)");
  regions_cmd->add_option("--density", density, "Grid points per axis");

  std::string second;
  double tolerance = kEquivalenceTolerance;
  auto* equiv_cmd = app.add_subcommand("equiv", "Compare two models on a box");
  equiv_cmd->add_option("first", model, "Model file")->required();
  equiv_cmd->add_option("second", second, "Model file")->required();
  equiv_cmd->add_option("--box", box, "Box a:b[,a:b...]");
  equiv_cmd->add_option("--density", density, "Grid points per axis");
  equiv_cmd->add_option("--tolerance", tolerance, "Absolute tolerance");

  auto* trace_cmd = app.add_subcommand("trace-export", "Turn a fit trace or loss curve into plot-ready CSV");
  trace_cmd->add_option("trace", model, "Trace CSV")->required();
  trace_cmd->add_option("--out", output, "Output CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit, *fit_cmd, out);
    if (eval_cmd->parsed()) return cmd_eval(model, points, grid, output, out);
    if (convert_cmd->parsed()) return cmd_convert(model, target, output, box, density, out);
    if (validate_cmd->parsed()) return cmd_validate(model, out);
    if (regions_cmd->parsed()) return cmd_regions(model, box, method, certificates, density, out);
    if (equiv_cmd->parsed()) return cmd_equiv(model, second, box, density, tolerance, out);
    if (trace_cmd->parsed()) return cmd_trace_export(model, output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotCplrRepresentable& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotRepresentable;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const FitFailure& e) {
    err << "error: fit failed: " << e.what() << '\n';
    return kExitFit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace pwlnn
