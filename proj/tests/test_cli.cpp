#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(QTAU_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::filesystem::path work() {
  auto d = std::filesystem::temp_directory_path() / "qtau_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

double value(const std::string& args) {
  Result r = run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out)["value_re"].get<double>();
}

}  // namespace

TEST_CASE("series and fredholm agree at the standard point") {
  double s = value("tau --method series");
  double f = value("tau --method fredholm");
  CHECK(std::abs(s - f) / std::abs(s) < 1e-8);
}

TEST_CASE("widom at the algebraic point") {
  json r = json::parse(run("tau --method widom --sigma 0.25 --s0 1 --sinf 1").out);
  // 1/(sqrt(qt); sqrt q, sqrt q) at q = 0.4, t = 0.05
  double exact = value("tau --method series --sigma 0.25 --S2 -1 --max-boxes 14");
  CHECK(std::abs(r["value_re"].get<double>() - exact) / exact < 1e-7);
  CHECK(r["cutoff"]["samples"] == 256);
}

TEST_CASE("record fields") {
  json r = json::parse(run("tau").out);
  for (const char* k : {"value_re", "value_im", "est_error", "cutoff", "method", "params"})
    CHECK(r.contains(k));
}

TEST_CASE("malformed config gives exit 2 and no partial output") {
  auto d = work();
  {
    std::ofstream f(d / "bad.cfg");
    f << "q = 0.4\nthis line is broken\n";
  }
  auto out = d / "bad_out.json";
  std::filesystem::remove(out);
  Result r = run("tau --config " + (d / "bad.cfg").string() + " --out " + out.string());
  CHECK(r.code == 2);
  CHECK(json::parse(r.out).contains("error"));
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("flags override the config file") {
  auto d = work();
  {
    std::ofstream f(d / "good.cfg");
    f << "# standard point\nq = 0.4\nt = 0.3\nmethod = fredholm\n";
  }
  json r = json::parse(run("tau --config " + (d / "good.cfg").string() + " --t 0.05").out);
  CHECK(r["method"] == "fredholm");
  CHECK(r["params"]["t"][0].get<double>() == 0.05);
}

TEST_CASE("input errors") {
  CHECK(run("tau --q 1.5").code == 2);
  CHECK(run("tau --q x").code == 2);
  CHECK(run("tau --S2 -0.8 --s0 1").code == 2);
  CHECK(run("tau --s0 1").code == 2);
  CHECK(run("tau --sigma 0.5").code == 2);
  CHECK(run("tau --method widom --k 0").code == 2);
  CHECK(run("tau --format xml").code == 2);
  CHECK(run("verify nosuch").code == 2);
  CHECK(run("bogus").code == 2);
}

TEST_CASE("complex parsing") {
  CHECK(run("special --fn theta --z 0.3+0.1i").code == 0);
  CHECK(run("special --fn theta --z 0.3-2.5e-1i").code == 0);
  CHECK(run("special --fn theta --z 1e-1i").code == 0);
  CHECK(run("special --fn theta --z 0.3+").code == 2);
}

TEST_CASE("nonconvergence gives exit 3") {
  CHECK(run("tau --t 0.9 --tol 1e-10 --max-boxes 6").code == 3);
}

TEST_CASE("scan at the standard monodromy") {
  json r = json::parse(run("scan").out);
  REQUIRE(r["rows"].size() == 32);
  double worst = 0.0;
  for (const auto& row : r["rows"]) worst = std::max(worst, row["painleve_residual"].get<double>());
  CHECK(worst < 1e-7);
  CHECK(r["rows"][0]["t"].get<double>() == doctest::Approx(0.01));
  CHECK(r["rows"][31]["t"].get<double>() == doctest::Approx(0.2));
}

TEST_CASE("scan on the algebraic family") {
  json r = json::parse(run("scan --sigma 0.25 --s0 1 --sinf 1").out);
  double lo = 1e300, hi = -1e300;
  for (const auto& row : r["rows"]) {
    double v = row["g_re"].get<double>() / std::pow(row["t"].get<double>(), 0.25);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("single-point scan matches tau semantics") {
  json r = json::parse(run("scan --n-points 1 --t-start 0.05").out);
  REQUIRE(r["rows"].size() == 1);
  CHECK(r["rows"][0]["t"].get<double>() == 0.05);
}

TEST_CASE("csv uses 17 significant digits and is deterministic") {
  Result a = run("tau --format csv"), b = run("tau --format csv");
  CHECK(a.out == b.out);
  CHECK(a.out.find("3.7522235256467602") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify combinatorics").code == 0);
  CHECK(run("verify special --tol 1e-300").code == 1);
}
