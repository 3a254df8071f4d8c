#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"colebrook"};
  argv.insert(argv.end(), args);
  std::ostringstream out, err;
  const int code = colebrook::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Value printed after `key` on its own line.
std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key, 0) == 0) {
      const auto pos = line.find_first_not_of(' ', key.size());
      return pos == std::string::npos ? "" : line.substr(pos);
    }
  return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve prints lambda at 15 significant digits") {
  const Run r = run({"solve", "--re", "5e6", "--rr", "2.5e-5", "--method", "newton-x", "--start", "fixed-newton"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "lambda") == "0.0102796632955293");
  const Run t = run({"solve", "--re", "3e4", "--rr", "9e-3", "--method", "3pt", "--start", "fixed-3pt"});
  CHECK(t.code == 0);
  CHECK(field(t.out, "lambda") == "0.0386307385747923");
}

TEST_CASE("solving from the printed root converges at once") {
  const Run a = run({"solve", "--re", "5e6", "--rr", "2.5e-5"});
  const std::string x = field(a.out, "x");
  const std::string start = "value:" + x;
  const Run b = run({"solve", "--re", "5e6", "--rr", "2.5e-5", "--method", "newton-x", "--start", start.c_str()});
  CHECK(b.code == 0);
  CHECK(std::stoi(field(b.out, "iterations")) <= 1);
}

TEST_CASE("trace output") {
  const Run r = run({"solve", "--re", "5e6", "--rr", "2.5e-5", "--method", "halley-x", "--start", "fixed-halley", "--trace", "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("iteration 1") != std::string::npos);
  CHECK(r.out.find("control step") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"table", "3"}).code == 0);
  CHECK(run({"table", "10"}).code == 0);
  CHECK(run({"table", "11"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"solve", "--re", "abc", "--rr", "1e-3"}).code == 2);
  CHECK(run({"solve", "--re", "1e5"}).code == 2);
  CHECK(run({"solve", "--re", "1e5", "--rr", "1e-3", "--method", "bisection"}).code == 2);
  CHECK(run({"solve", "--re", "1e5", "--rr", "1e-3", "--start", "value:-3"}).code == 2);
  CHECK(run({"solve", "--re", "-1", "--rr", "1e-3"}).code == 2);
  CHECK(run({"solve", "--re", "1000", "--rr", "1e-3", "--strict"}).code == 2);
  const Run nc = run({"solve", "--re", "5e6", "--rr", "2.5e-5", "--method", "newton-lambda", "--start", "fixed-newton", "--max-iter", "1"});
  CHECK(nc.code == 3);
  CHECK(nc.out.find("no") != std::string::npos);
  CHECK(run({"sweep", "--map", "error", "--estimator", "approx:0", "--grid", "2x2", "--out", "/nonexistent-dir/sub/tiny.csv"}).code == 5);
  CHECK(run({"sweep", "--map", "error", "--estimator", "approx:9", "--grid", "2x2", "--out", "x.csv"}).code == 2);
  CHECK(run({"sweep", "--map", "error", "--grid", "2by2", "--out", "x.csv"}).code == 2);
  CHECK(run({"approx", "--re", "5e6", "--rr", "2.5e-5", "--level", "3"}).code == 2);
  CHECK(run({"lambertw", "--y", "-4"}).code == 2);
  CHECK(run({"lambertw", "--y", "45871560", "--method", "newton", "--z0", "8"}).code == 3);
}

TEST_CASE("sweep writes CSV and JSON, byte-identical across runs") {
  const auto dir = std::filesystem::temp_directory_path() / "colebrook_cli_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  CHECK(run({"sweep", "--map", "error", "--estimator", "approx:0", "--grid", "2x2", "--out", a.c_str()}).code == 0);
  CHECK(run({"sweep", "--map", "error", "--estimator", "approx:0", "--grid", "2x2", "--out", b.c_str(), "--jobs", "2"}).code == 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  };
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  const Run it = run({"sweep", "--map", "iteration", "--method", "halley-x", "--start", "fixed-halley", "--grid", "16x16", "--out", a.c_str()});
  CHECK(it.code == 0);
  CHECK(slurp(dir / "a.json").find("\"max_value\": 3.0") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("approx and lambertw subcommands") {
  const Run a = run({"approx", "--re", "3e4", "--rr", "9e-3", "--level", "2"});
  CHECK(a.code == 0);
  CHECK(field(a.out, "nabla") == "344205.5");
  const Run w = run({"lambertw", "--re", "5e6", "--method", "halley"});
  CHECK(w.code == 0);
  CHECK(field(w.out, "W").rfind("12.14835704", 0) == 0);
  const Run al = run({"lambertw", "--re", "1e8", "--rr", "0.05"});
  CHECK(al.code == 0);
  CHECK(al.out.find("overflow") != std::string::npos);
}

TEST_CASE("environment overrides") {
  setenv("COLEBROOK_MAXITER", "1", 1);
  CHECK(run({"solve", "--re", "5e6", "--rr", "2.5e-5", "--method", "newton-lambda", "--start", "fixed-newton"}).code == 3);
  unsetenv("COLEBROOK_MAXITER");
  setenv("COLEBROOK_TOL", "abc", 1);
  CHECK(run({"solve", "--re", "5e6", "--rr", "2.5e-5"}).code == 2);
  unsetenv("COLEBROOK_TOL");
}

}
