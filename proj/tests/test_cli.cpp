#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "nct/cli.hpp"
#include "nct/jsonio.hpp"

using namespace nct;

namespace {

Json resultOf(const CliResult& r) {
  Json j = Json::parse(r.out);
  REQUIRE(j.at("tool") == "nctrace");
  return j.at("result");
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/nct_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli: cyclic matches the documented output") {
  CliResult r = runCliCapture({"cyclic", "x1*x2 - x2*x1"});
  CHECK(r.exit_code == 0);
  Json res = resultOf(r);
  CHECK(res.at("normal_form") == "0");
  CHECK(res.at("in_c_cyc") == true);
}

TEST_CASE("cli: standard polynomial text") {
  CliResult r = runCliCapture({"standard", "--k", "1"});
  CHECK(r.exit_code == 0);
  CHECK(resultOf(r).at("poly") == "x1*x2 - x2*x1");
}

TEST_CASE("cli: jk-basis dimensions") {
  CliResult r = runCliCapture({"jk-basis", "--k", "2", "--deg", "3", "--vars", "2", "--seed", "0"});
  CHECK(r.exit_code == 0);
  CHECK(resultOf(r).at("dimension") == 0);

  CliResult r2 = runCliCapture({"jk-basis", "--k", "1", "--deg", "2", "--vars", "2", "--seed", "0"});
  CHECK(resultOf(r2).at("dimension") == 1);
  CHECK(resultOf(r2).at("basis")[0] == "x1*x2 - x2*x1");
}

TEST_CASE("cli: parse is a fixed point and exit codes are mapped") {
  CliResult r = runCliCapture({"parse", "2*x1*x2 - x2*x1 + (0,1)*x3^2"});
  CHECK(r.exit_code == 0);
  std::string emitted = resultOf(r).at("poly");
  CliResult r2 = runCliCapture({"parse", emitted});
  CHECK(resultOf(r2).at("poly") == emitted);

  // grammar errors carry a position and exit 64
  CliResult bad = runCliCapture({"parse", "x1 + @"});
  CHECK(bad.exit_code == 64);
  CHECK(bad.err.find("position") != std::string::npos);

  // usage errors exit 64
  CHECK(runCliCapture({"standard"}).exit_code == 64);
  CHECK(runCliCapture({"nonsense"}).exit_code == 64);

  // verified negatives exit 1
  CHECK(runCliCapture({"is-identity", "x1*x2 - x2*x1", "--k", "2"}).exit_code == 1);
  CHECK(runCliCapture({"is-identity", "x1*x2 - x2*x1", "--k", "1"}).exit_code == 0);
  CHECK(runCliCapture({"sos", "-1", "--vars", "1", "--deg", "1"}).exit_code == 1);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  std::vector<std::string> cmd{"psi-trace", "--k",   "2",      "--vars", "2",
                               "--deg",     "4",     "--samples", "2000",   "--seed", "9"};
  CliResult a = runCliCapture(cmd);
  CliResult b = runCliCapture(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  CliResult c = runCliCapture({"ineq", "--suite", "cs", "--trials", "50", "--seed", "3"});
  CliResult d = runCliCapture({"ineq", "--suite", "cs", "--trials", "50", "--seed", "3"});
  CHECK(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("cli: trace files flow through trace-check and approx") {
  TempFile tf("trace.json");
  {
    // the semicircular pair truncated at degree four
    std::ofstream f(tf.path);
    f << R"({"n":2,"m":4,"values":{"1":[1,0],"x1.x1":[1,0],"x2.x2":[1,0],"x1.x1.x2.x2":[1,0],"x1.x1.x1.x1":[2,0],"x2.x2.x2.x2":[2,0]}})";
  }
  CliResult chk = runCliCapture({"trace-check", "--trace", tf.path, "--order", "2"});
  CHECK(chk.exit_code == 0);
  CHECK(resultOf(chk).at("positive") == true);

  CliResult ap = runCliCapture({"approx", "--trace", tf.path, "--k", "3", "--working-deg", "4"});
  CHECK(ap.exit_code == 0);
  Json res = resultOf(ap);
  CHECK(res.at("jk_dim") == 0);
  CHECK(res.at("distance").get<double>() <= 1e-6);

  CliResult cv = runCliCapture({"converge", "--trace", tf.path, "--kmax", "2"});
  CHECK(cv.exit_code == 0);
  auto pts = resultOf(cv).at("points");
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].at("distance").get<double>() >= pts[1].at("distance").get<double>() - 1e-7);

  CliResult missing = runCliCapture({"approx", "--trace", "/nonexistent.json", "--k", "2"});
  CHECK(missing.exit_code == 64);
}

TEST_CASE("cli: text format renders") {
  CliResult r = runCliCapture({"--format", "text", "cyclic", "x1*x2 - x2*x1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("normal form: 0") != std::string::npos);
  CliResult r2 = runCliCapture({"--format", "text", "standard", "--k", "2"});
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("x1") != std::string::npos);
}

TEST_CASE("cli: output to file") {
  TempFile tf("out.json");
  CliResult r = runCliCapture({"--out", tf.path, "standard", "--k", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(tf.path);
  Json j;
  f >> j;
  CHECK(j.at("result").at("poly") == "x1*x2 - x2*x1");
}
