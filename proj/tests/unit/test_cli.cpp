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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pwlnn/cli/commands.hpp"
#include "pwlnn/cli/config.hpp"
#include "support.hpp"

using namespace pwlnn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Value of a `key: value` summary line.
std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("pwlnn-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string data(const std::string& name) { return testing::data_path(name); }

void write_three_piece_csv(const std::string& path) {
  std::ofstream out(path);
  out << "x,y\n";
  for (int k = 0; k <= 600; ++k) {
    const double x = -3.0 + k / 100.0;
    out << x << ',' << testing::three_piece(x) << '\n';
  }
}

void write_ridge_csv(const std::string& path, int per_axis) {
  std::ofstream out(path);
  out.precision(17);
  out << "x1,x2,y\n";
  for (int i = 0; i < per_axis; ++i) {
    for (int j = 0; j < per_axis; ++j) {
      const double a = static_cast<double>(i) / (per_axis - 1), b = static_cast<double>(j) / (per_axis - 1);
      out << a << ',' << b << ',' << testing::ridge(a, b) << '\n';
    }
  }
}

}  // namespace

TEST_CASE("fit hh on three-piece samples") {
  TempDir dir;
  write_three_piece_csv(dir / "d.csv");
  const Run r = run({"fit", "--data", dir / "d.csv", "--kind", "hh", "--out", dir / "m.hh", "--max-terms", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(std::stod(value_of(r.out, "train_rmse")) <= 1e-6);
  CHECK(value_of(r.out, "kind") == "hh");
  CHECK(value_of(r.out, "seed") == "1");
  CHECK(fs::exists(dir / "m.hh"));
  CHECK(slurp(dir / "m.hh.trace.csv").rfind("round,terms,train_sse,val_sse,action\n", 0) == 0);

  const Run e = run({"eval", dir / "m.hh", "--grid", "-3:3:1"});
  CHECK(e.code == kExitOk);
  std::istringstream rows(e.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x1,f");
  for (double x = -3; x <= 3; ++x) {
    std::getline(rows, line);
    const double f = std::stod(line.substr(line.find(',') + 1));
    CHECK(std::abs(f - testing::three_piece(x)) <= 1e-6);
  }
}

TEST_CASE("fit usage and input errors") {
  TempDir dir;
  write_three_piece_csv(dir / "d.csv");
  CHECK(run({"fit", "--data", dir / "d.csv", "--kind", "hh", "--out", dir / "m", "--max-terms", "0"}).code ==
        kExitUsage);
  CHECK(run({"fit", "--data", dir / "missing.csv", "--kind", "hh", "--out", dir / "m"}).code == kExitInput);
  CHECK(run({"fit", "--data", dir / "d.csv", "--kind", "svm", "--out", dir / "m"}).code == kExitUsage);
  CHECK(run({"fit", "--data", dir / "d.csv", "--kind", "hh", "--out", dir / "m", "--bogus"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);

  std::ofstream(dir / "bad.cfg") << "max_terms = three\n";
  CHECK(run({"fit", "--data", dir / "d.csv", "--kind", "hh", "--out", dir / "m", "--config", dir / "bad.cfg"}).code ==
        kExitUsage);
  std::ofstream(dir / "ok.cfg") << "# comment\nmax_terms = 1\nseed = 4\n";
  const Run r = run({"fit", "--data", dir / "d.csv", "--kind", "hh", "--out", dir / "m", "--config", dir / "ok.cfg",
                     "--seed", "5"});
  CHECK(r.code == kExitOk);
  CHECK(value_of(r.out, "terms") == "1");
  CHECK(value_of(r.out, "seed") == "5");
}

TEST_CASE("fit is byte-identical across runs for every fitter") {
  TempDir dir;
  write_ridge_csv(dir / "ridge.csv", 9);
  for (const std::string kind : {"hh", "ahh", "sbf", "dnn"}) {
    std::vector<std::string> extra = {"--seed", "7", "--validation-fraction", "0.2"};
    if (kind == "dnn") extra.insert(extra.end(), {"--epochs", "20", "--layers", "8,8"});
    for (const char* name : {"a", "b"}) {
      std::vector<std::string> args = {"fit", "--data", dir / "ridge.csv", "--kind", kind, "--out", dir / (kind + name)};
      args.insert(args.end(), extra.begin(), extra.end());
      REQUIRE_MESSAGE(run(args).code == kExitOk, kind);
    }
    CHECK_MESSAGE(slurp(dir / (kind + "a")) == slurp(dir / (kind + "b")), kind);
    CHECK_MESSAGE(slurp(dir / (kind + "a.trace.csv")) == slurp(dir / (kind + "b.trace.csv")), kind);
  }
}

TEST_CASE("eval") {
  TempDir dir;
  const Run lattice = run({"eval", data("five_piece_lattice.pwl"), "--grid", "0:5:0.5"});
  REQUIRE(lattice.code == kExitOk);
  CHECK(lattice.out.find("\n2.5,2\n") != std::string::npos);

  const Run ghh = run({"eval", data("ridge_nested.pwl"), "--grid", "1:1:1"});
  CHECK(ghh.out == "x1,x2,f\n1,1,20\n");

  std::ofstream(dir / "empty.csv").close();
  const Run empty = run({"eval", data("ridge_ghh.pwl"), "--points", dir / "empty.csv"});
  CHECK(empty.code == kExitOk);
  CHECK(empty.out.empty());

  std::ofstream(dir / "pts.csv") << "0,0\n1,1\n";
  const Run pts = run({"eval", data("ridge_ghh.pwl"), "--points", dir / "pts.csv", "--out", dir / "f.csv"});
  CHECK(pts.code == kExitOk);
  CHECK(slurp(dir / "f.csv") == "x1,x2,f\n0,0,0\n1,1,20\n");

  std::ofstream(dir / "wrong.csv") << "0,0,0\n";
  CHECK(run({"eval", data("ridge_ghh.pwl"), "--points", dir / "wrong.csv"}).code == kExitInput);
  CHECK(run({"eval", dir / "nope.pwl", "--grid", "0:1:1"}).code == kExitInput);
}

TEST_CASE("convert") {
  TempDir dir;
  const Run l = run({"convert", data("five_piece.pwl"), "--to", "lattice", "--out", dir / "l.pwl"});
  REQUIRE(l.code == kExitOk);
  for (const char* s : {"S1: 1,3,4,5", "S2: 2,3,4,5", "S3: 2,3,4", "S4: 1,2,3,4", "S5: 1,2,3,5"}) {
    CHECK(l.out.find(std::string(s) + "\n") != std::string::npos);
  }
  CHECK(value_of(l.out, "max_deviation") == "0");

  const Run c = run({"convert", data("ridge.pwl"), "--to", "cplr", "--out", dir / "c.cplr"});
  CHECK(c.code == kExitNotRepresentable);
  CHECK(value_of(c.out, "verdict") == "not-representable");
  CHECK_FALSE(fs::exists(dir / "c.cplr"));

  const Run h = run({"convert", data("three_piece.cplr"), "--to", "hh", "--out", dir / "t.hh"});
  CHECK(h.code == kExitOk);
  CHECK(value_of(h.out, "max_deviation") == "0");
  const Run back = run({"convert", dir / "t.hh", "--to", "cplr", "--out", dir / "t.cplr"});
  CHECK(back.code == kExitOk);
  CHECK(value_of(back.out, "max_deviation") == "0");

  CHECK(run({"convert", data("ridge_nested.pwl"), "--to", "dc", "--out", dir / "n.dc"}).code == kExitOk);
  const Run g = run({"convert", dir / "n.dc", "--to", "ghh", "--out", dir / "n.ghh"});
  CHECK(g.code == kExitOk);
  CHECK(value_of(g.out, "max_deviation") == "0");

  const Run bad = run({"convert", data("ridge_ghh.pwl"), "--to", "lattice", "--out", dir / "x"});
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("conventional->lattice") != std::string::npos);
}

TEST_CASE("validate") {
  const Run jumps = run({"validate", data("five_piece_jumps.pwl")});
  CHECK(jumps.code == kExitViolations);
  CHECK(value_of(jumps.out, "continuity") == "violated");
  CHECK(jumps.out.find("1.8") != std::string::npos);
  CHECK(jumps.out.find("3.2") != std::string::npos);

  const Run plane = run({"validate", data("abs_plane.pwl")});
  CHECK(plane.code == kExitOk);
  CHECK(value_of(plane.out, "continuity") == "ok");
  CHECK(value_of(plane.out, "consistent_variation") == "representable");

  const Run ridge = run({"validate", data("ridge.pwl")});
  CHECK(ridge.code == kExitOk);
  CHECK(value_of(ridge.out, "consistent_variation") == "not-representable");

  CHECK(run({"validate", data("affine.pwl")}).code == kExitOk);
  CHECK(run({"validate", data("three_piece.cplr")}).code == kExitOk);
  CHECK(run({"validate", data("three_lines.net")}).code == kExitOk);

  TempDir dir;
  std::ofstream(dir / "broken.pwl") << "pwl-conventional v1 dim=1 pieces=1\nJ=x b=0\n";
  const Run broken = run({"validate", dir / "broken.pwl"});
  CHECK(broken.code == kExitInput);
  CHECK(broken.err.find("line 2, column 3") != std::string::npos);
}

TEST_CASE("regions") {
  const Run three = run({"regions", data("three_lines.net"), "--box", "-4:4"});
  REQUIRE(three.code == kExitOk);
  CHECK(value_of(three.out, "count") == "7");
  CHECK(value_of(three.out, "zaslavsky_bound") == "7");
  CHECK(three.out.find("region,pattern,witness,jacobian,bias\n") != std::string::npos);

  const Run quad = run({"regions", data("quadrants.net"), "--box", "-1:1", "--method", "grid-probe"});
  CHECK(value_of(quad.out, "count") == "4");

  TempDir dir;
  {
    std::ofstream big(dir / "big.net");
    big << "pwl-net v1 inputs=2 outputs=1 layers=1\nlayer units=25 activation=relu\n";
    for (int i = 0; i < 25; ++i) big << "row w=1," << i << " b=" << -i << '\n';
    big << "output\nrow w=1";
    for (int i = 1; i < 25; ++i) big << ",1";
    big << " b=0\n";
  }
  CHECK(run({"regions", dir / "big.net", "--box", "-1:1", "--method", "pattern-enumeration"}).code == kExitBudget);
}

TEST_CASE("equiv") {
  const Run same = run({"equiv", data("ridge_nested.pwl"), data("ridge_ghh.pwl"), "--box", "-2:2"});
  CHECK(same.code == kExitOk);
  CHECK(value_of(same.out, "max_deviation") == "0");
  CHECK(run({"equiv", data("ridge_nested.pwl"), data("ridge.pwl")}).code == kExitOk);
  const Run diff = run({"equiv", data("three_piece.cplr"), data("five_piece_lattice.pwl")});
  CHECK(diff.code == kExitViolations);
  CHECK(value_of(diff.out, "verdict") == "different");
  CHECK(run({"equiv", data("three_piece.cplr"), data("ridge_ghh.pwl")}).code == kExitInput);
}

TEST_CASE("trace-export") {
  TempDir dir;
  std::ofstream(dir / "t.csv") << "round,terms,train_sse,val_sse,action\n0,0,4,4,affine\n1,1,1,2,add\n";
  const Run r = run({"trace-export", dir / "t.csv", "--out", dir / "long.csv"});
  REQUIRE(r.code == kExitOk);
  const std::string text = slurp(dir / "long.csv");
  CHECK(text.rfind("series,step,value\n", 0) == 0);
  CHECK(text.find("train_sse,1,1\n") != std::string::npos);
  std::ofstream(dir / "l.csv") << "epoch,loss\n1,0.5\n2,0.25\n";
  const Run l = run({"trace-export", dir / "l.csv"});
  CHECK(l.out.find("loss,2,0.25\n") != std::string::npos);
  std::ofstream(dir / "x.csv") << "a,b\n1,2\n";
  CHECK(run({"trace-export", dir / "x.csv"}).code == kExitInput);
}

TEST_CASE("grid specs and settings") {
  const auto pts = parse_grid("0:1:0.5", 2);
  REQUIRE(pts.size() == 9);
  CHECK(pts[1][0] == 0.0);
  CHECK(pts[1][1] == 0.5);
  CHECK(pts[3][0] == 0.5);
  CHECK_THROWS(parse_grid("0:1", 1));
  CHECK_THROWS(parse_grid("0:1:0", 1));

  std::istringstream in("seed = 3\n  # note\nlayers = 4,4\n");
  const Settings s = read_settings(in);
  CHECK(s.at("seed") == "3");
  const FitSettings f = apply_settings(s);
  CHECK(f.fit.seed == 3);
  CHECK(f.train.seed == 3);
  CHECK(f.layers == std::vector<std::size_t>{4, 4});
  CHECK_THROWS_AS(apply_settings(Settings{{"colour", "red"}}), UsageError);
}

TEST_CASE("atomic writes replace the target") {
  TempDir dir;
  write_file_atomic(dir / "x.txt", "one");
  write_file_atomic(dir / "x.txt", "two");
  CHECK(slurp(dir / "x.txt") == "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "")) ++files;
  CHECK(files == 1);
}
