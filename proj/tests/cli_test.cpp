#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "condgrowth/cli.hpp"

namespace fs = std::filesystem;
using condgrowth::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("condgrowth_cli_test_" + std::to_string(::getpid()) + "_" +
                                          std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& body) const {
    const auto p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bounds on an orthonormal block reports bound 1 and actual 1") {
  TempDir dir;
  const auto b = dir.write("B.csv", "3,2\n1,0\n0,1\n0,0\n");
  const auto c = dir.write("c.csv", "3,1\n0\n0\n1\n");
  const auto r = invoke({"bounds", "--matrix", b, "--column", c, "--gamma", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("name,side,bound_value,actual_value,", 0) == 0);
  bool saw_unit = false;
  while (std::getline(in, line)) {
    if (line.rfind("kappa_bound_unit_columns,", 0) == 0) {
      CHECK(line.rfind("kappa_bound_unit_columns,upper,1,1,true,true,", 0) == 0);
      saw_unit = true;
    }
  }
  CHECK(saw_unit);

  const auto text = invoke({"bounds", "--matrix", b, "--column", c});
  CHECK(text.code == 0);
  CHECK(text.out.find("kappa_bound_via_q") != std::string::npos);
  CHECK(text.out.find("residual_identity_check") != std::string::npos);
}

TEST_CASE("bounds with an x/y split adds the rank-one update reports") {
  TempDir dir;
  const auto b = dir.write("B.csv", "3,2\n1,0\n0,1\n0,0\n");
  const auto c = dir.write("c.csv", "3,1\n0\n0\n1\n");
  const auto x = dir.write("x.csv", "3,1\n0\n0\n1\n");
  const auto y = dir.write("y.csv", "3,1\n0\n0\n0\n");
  const auto r = invoke({"bounds", "--matrix", b, "--column", c, "--x", x, "--y", y, "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\nkappa_bound_general,upper,") != std::string::npos);
  CHECK(r.out.find("\nkappa_bound_eps,upper,") != std::string::npos);
}

TEST_CASE("malformed matrix csv names the line") {
  TempDir dir;
  const auto b = dir.write("B.csv", "3,2\n1,0\n0,x\n0,0\n");
  const auto c = dir.write("c.csv", "3,1\n0\n0\n1\n");
  const auto r = invoke({"bounds", "--matrix", b, "--column", c});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(count_lines(r.err) == 1);

  const auto missing = invoke({"bounds", "--matrix", (dir.path() / "none.csv").string(), "--column", c});
  CHECK(missing.code == 1);
}

TEST_CASE("rank-deficient B exits with the precondition code") {
  TempDir dir;
  const auto b = dir.write("B.csv", "3,2\n1,2\n2,4\n0,0\n");
  const auto c = dir.write("c.csv", "3,1\n0\n0\n1\n");
  const auto r = invoke({"bounds", "--matrix", b, "--column", c});
  CHECK(r.code == condgrowth::cli::kExitPrecondition);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(count_lines(r.err) == 1);
}

TEST_CASE("unknown flags and bad values are rejected") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sim-norm-tail", "--bogus", "1"},
           {"sim-norm-tail", "--m", "abc"},
           {"sim-norm-tail", "--sigma-grid", "1e-3:1"},
           {"specfun", "--fn", "nope"},
           {"frobnicate"},
           {}}) {
    const auto r = invoke(args);
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(count_lines(r.err) == 1);
  }
}

TEST_CASE("specfun evaluates a Marcum function") {
  const auto r = invoke({"specfun", "--fn", "marcum", "--order", "1", "--alpha", "1", "--beta", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("fn,value,abs_error_bound\nmarcum,0.73287980379", 0) == 0);
  const auto bad = invoke({"specfun", "--fn", "marcum", "--order", "1", "--alpha", "-1", "--beta", "1"});
  CHECK(bad.code == 1);
  CHECK(bad.out.empty());
}

TEST_CASE("sim-norm-tail grid output is deterministic") {
  const std::vector<std::string> args{"sim-norm-tail", "--m", "50", "--x-norm", "1", "--eps", "0.9",
                                      "--sigma-grid", "1e-3:1:20", "--trials", "2000", "--seed", "7"};
  const auto a = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(count_lines(a.out) == 21);
  CHECK(a.out == invoke(args).out);
  auto parallel = args;
  parallel.insert(parallel.end(), {"--workers", "8"});
  CHECK(a.out == invoke(parallel).out);
}

TEST_CASE("sim commands write to --out") {
  TempDir dir;
  const auto path = (dir.path() / "ls.csv").string();
  const auto r = invoke({"sim-ls", "--trials", "500", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(count_lines(body.str()) >= 2);

  const auto figs = invoke({"sim-norm-tail", "--figures", dir.path().string(), "--trials", "100"});
  REQUIRE(figs.code == 0);
  CHECK(fs::exists(dir.path() / "fig1_norm_tail.csv"));
  CHECK(fs::exists(dir.path() / "fig2_norm_tail.csv"));
}

TEST_CASE("every subcommand has help text") {
  for (const std::string sub : {"specfun", "bounds", "sim-norm-tail", "sim-projection", "sim-ls", "sim-qr-noise",
                                "errata-report"}) {
    const auto r = invoke({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Usage:") != std::string::npos);
    CHECK(r.out.size() > 200);
  }
  const auto top = invoke({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("errata-report") != std::string::npos);
}

}  // TEST_SUITE
