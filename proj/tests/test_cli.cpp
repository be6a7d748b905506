#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polywave/filterbank.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(POLYWAVE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/polywave_cli_test_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
}

std::vector<double> csv_values(const std::string& text) {
  std::istringstream is(text);
  return polywave::read_signal_csv(is);
}

}  // namespace

TEST_CASE("filters emits the classical quartet and passes") {
  const RunResult r = run("filters --N 2 --xi 0 --level 0");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j.at("diagnostics").at("pass").get<bool>());
  const std::vector<double> g = j.at("mask").at("coeffs").get<std::vector<double>>();
  REQUIRE(g.size() == 4);
  const double s3 = std::sqrt(3.0);
  CHECK(g[0] == doctest::Approx((1.0 + s3) / 4.0).epsilon(1e-10));
  CHECK(g[3] == doctest::Approx((1.0 - s3) / 4.0).epsilon(1e-10));
}

TEST_CASE("filters reports the N=1 symbol value") {
  const RunResult r = run("filters --N 1 --xi 1 --level 0");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  const std::vector<double> a = j.at("symbol").at("coeffs").get<std::vector<double>>();
  REQUIRE(a.size() == 3);
  CHECK(a[0] == doctest::Approx(1.0 / (2.0 * std::cosh(0.5))).epsilon(1e-12));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("filters --N 0").exit_code == 2);
  CHECK(run("filters").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("cascade --N 2 --L 40").exit_code == 2);
  CHECK(run("denoise --N 2 --tau -1 --in x.csv").exit_code == 2);
}

TEST_CASE("verify passes for a clean configuration") {
  const RunResult r = run("verify --N 2 --xi 1 --level 0 --out " + temp_path("verify.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(slurp(temp_path("verify.json")));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("grid_size").get<int>() == 512);
}

TEST_CASE("verify reports the classical-limit check at xi = 0") {
  const RunResult r = run("verify --N 3 --xi 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("classical_limit_match") != std::string::npos);
}

TEST_CASE("POLYWAVE_GRID overrides the verification grid") {
  const std::string cmd = std::string("POLYWAVE_GRID=128 ") + POLYWAVE_CLI_PATH +
                          " verify --N 2 --xi 0 --out " + temp_path("grid.json") +
                          " > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(temp_path("grid.json")));
  CHECK(j.at("grid_size").get<int>() == 128);
}

TEST_CASE("verify rejects a corrupted filter file") {
  const std::string good_path = temp_path("mask.json");
  CHECK(run("filters --N 2 --xi 1 --level 0 --out " + good_path).exit_code == 0);
  CHECK(run("verify --N 2 --xi 1 --check-file " + good_path).exit_code == 0);

  nlohmann::json j = nlohmann::json::parse(slurp(good_path));
  j["mask"]["coeffs"][1] = j["mask"]["coeffs"][1].get<double>() + 0.05;
  const std::string bad_path = temp_path("mask_bad.json");
  write_file(bad_path, j.dump());
  CHECK(run("verify --N 2 --xi 1 --check-file " + bad_path).exit_code == 1);

  write_file(temp_path("mask_junk.json"), "not json at all");
  CHECK(run("verify --N 2 --xi 1 --check-file " + temp_path("mask_junk.json")).exit_code == 1);
}

TEST_CASE("cascade writes a deterministic triple") {
  const std::string prefix = temp_path("casc");
  CHECK(run("cascade --N 1 --xi 0 --L 4 --out " + prefix).exit_code == 0);
  const std::string fund = slurp(prefix + "_fundamental.csv");
  const std::string father = slurp(prefix + "_father.csv");
  const std::string mother = slurp(prefix + "_mother.csv");
  CHECK(fund.rfind("t,value\n", 0) == 0);
  // hat function peak
  CHECK(fund.find("\n0,1\n") != std::string::npos);
  CHECK(run("cascade --N 1 --xi 0 --L 4 --out " + prefix).exit_code == 0);
  CHECK(slurp(prefix + "_fundamental.csv") == fund);
  CHECK(slurp(prefix + "_father.csv") == father);
  CHECK(slurp(prefix + "_mother.csv") == mother);
}

TEST_CASE("analyze/synthesize roundtrip through files") {
  const std::string in = temp_path("sig.csv");
  {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> sig(256);
    for (double& v : sig) v = u(rng);
    std::ofstream os(in);
    polywave::write_signal_csv(sig, os);
  }
  const std::string pyr = temp_path("pyr.json");
  const std::string rec = temp_path("rec.csv");
  CHECK(run("analyze --N 2 --xi 1 -J 3 --in " + in + " --out " + pyr).exit_code == 0);
  CHECK(run("synthesize --in " + pyr + " --out " + rec).exit_code == 0);
  const std::vector<double> a = csv_values(slurp(in));
  const std::vector<double> b = csv_values(slurp(rec));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9);

  // tau = 0 denoise is the identity
  const std::string den = temp_path("den.csv");
  CHECK(run("denoise --N 2 --xi 1 -J 3 --tau 0 --mode soft --in " + in + " --out " + den)
            .exit_code == 0);
  const std::vector<double> c = csv_values(slurp(den));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - c[i]) <= 1e-9);
}

TEST_CASE("bad signal length is a computational failure") {
  const std::string in = temp_path("sig63.csv");
  {
    std::vector<double> sig(63, 1.0);
    std::ofstream os(in);
    polywave::write_signal_csv(sig, os);
  }
  const RunResult r = run("analyze --N 2 --xi 0 -J 3 --in " + in);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("length not divisible by 2^J") != std::string::npos);
}

TEST_CASE("missing input file is a computational failure") {
  CHECK(run("analyze --N 2 -J 2 --in /tmp/polywave_no_such_file.csv").exit_code == 1);
  CHECK(run("synthesize --in /tmp/polywave_no_such_file.json").exit_code == 1);
}

TEST_CASE("image roundtrip through the CLI") {
  const std::string in = temp_path("img.pgm");
  {
    polywave::ImageBuffer img;
    img.width = 16;
    img.height = 16;
    std::mt19937 rng(5);
    img.pixels.resize(256);
    for (double& p : img.pixels) p = static_cast<double>(rng() % 256);
    std::ofstream os(in, std::ios::binary);
    polywave::write_pgm(img, os, false);
  }
  const std::string pyr = temp_path("ipyr.json");
  const std::string rec = temp_path("irec.pgm");
  CHECK(run("analyze --N 2 -J 2 --in " + in + " --out " + pyr).exit_code == 0);
  CHECK(run("synthesize --in " + pyr + " --out " + rec).exit_code == 0);
  std::ifstream ia(in, std::ios::binary), ib(rec, std::ios::binary);
  const polywave::ImageBuffer a = polywave::read_pgm(ia);
  const polywave::ImageBuffer b = polywave::read_pgm(ib);
  REQUIRE(a.pixels.size() == b.pixels.size());
  CHECK(a.pixels == b.pixels);  // integer pixels survive the roundtrip exactly
}
