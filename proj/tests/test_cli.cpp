#include "bie2d/harness.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace bie2d;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

int config_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line " + std::to_string(e.line())) != std::string::npos);
    return e.line();
  }
  return -1;
}

// CSV row without the two timing columns.
std::string untimed(const SolveReport& r) {
  std::string row = csv_row(r);
  for (int k = 0; k < 2; ++k) row.erase(row.rfind(','));
  return row;
}

const char* small_square =
    "geometry.kind = square\n"
    "physics.k1 = 1\n"
    "physics.k2 = 4\n"
    "formulation = cfiesk\n"
    "gmres.tol = 1e-10\n"
    "discretization.unknowns = 128\n"
    "farfield.num_dirs = 64\n"
    "reference.kind = none\n";

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bie2d_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BIE2D_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing fills every section") {
  const RunConfig c = parse(
      "# comment line\n"
      "geometry.kind = ushape\n"
      "geometry.notch_depth = 3   # trailing comment\n"
      "physics.k1 = 2\nphysics.k2 = 8\nphysics.rho_mode = k_ratio\n"
      "physics.kappa_im = 4\n"
      "discretization.unknowns = 256, 512\n"
      "formulation = cfier, scfie\n"
      "gmres.tol = 1e-4\ngmres.max_iter = 300\n"
      "bench.cases = 1:4:256, 28:8:2048\n"
      "threads = 1\n");
  CHECK(c.geometry.kind == "ushape");
  CHECK(c.geometry.notch_depth == 3.0);
  CHECK(c.k1 == 2.0);
  CHECK(c.rho_mode == RhoMode::KRatio);
  CHECK(c.unknowns == std::vector<int>{256, 512});
  CHECK(c.formulations == std::vector<Formulation>{Formulation::CFIER, Formulation::SCFIE});
  CHECK(c.order(Formulation::CFIER) == 3);
  CHECK(c.order(Formulation::SCFIE) == 4);
  CHECK(c.tol == 1e-4);
  CHECK(c.max_iter == 300);
  REQUIRE(c.cases.size() == 2);
  CHECK(c.cases[1].k1 == 28.0);
  CHECK(c.cases[1].unknowns == 2048);
  CHECK(c.threads == 1);

  const TransmissionProblem p = c.problem(2.0, 8.0);
  CHECK(p.rho == doctest::Approx(1.0 / 16.0));
  CHECK(p.kappa.real() == doctest::Approx(5.0));
  CHECK(p.kappa.imag() == doctest::Approx(4.0));
}

TEST_CASE("malformed configs report the offending line") {
  CHECK(config_error_line("physics.k1 = 1\n\nnot_a_section.key = 3\n") == 3);
  CHECK(config_error_line("physics.k1 = abc\n") == 1);
  CHECK(config_error_line("# c\nphysics.k2 = -4\n") == 2);
  CHECK(config_error_line("gmres.tol = 1.5\n") == 1);
  CHECK(config_error_line("formulation = cfiexx\n") == 1);
  CHECK(config_error_line("physics.k1 = 1\nmissing equals sign\n") == 2);
  CHECK(config_error_line("bench.cases = 1:4\n") == 1);
  CHECK(config_error_line("physics.rho_mode = two\n") == 1);
}

TEST_CASE("CSV header is fixed") {
  CHECK(std::string(csv_header()) == "formulation,k1,k2,rho,unknowns,p,gmres_tol,iterations,eps_inf,matvec_ms,total_ms");
}

TEST_CASE("a bench sweep of length one reproduces solve, and reruns are identical") {
  RunConfig cfg = parse(small_square);
  std::ostringstream sink;
  const auto solved = run_solve(cfg, sink);
  cfg.cases = {{1.0, 4.0, 128}};
  const auto benched = run_bench(cfg, sink);
  REQUIRE(solved.size() == 1);
  REQUIRE(benched.size() == 1);
  CHECK(untimed(solved[0]) == untimed(benched[0]));
  CHECK((solved[0].far.values - benched[0].far.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(solved[0].matvec_ms > 0.0);

  const auto again = run_solve(parse(small_square), sink);
  CHECK(untimed(again[0]) == untimed(solved[0]));
}

TEST_CASE("convergence rows with repeated counts are identical and ordered") {
  RunConfig cfg = parse(small_square);
  cfg.unknowns = {128, 128};
  cfg.reference = ReferenceKind::Zero;
  std::ostringstream sink;
  const auto rows = run_convergence(cfg, sink);
  REQUIRE(rows.size() == 2);
  CHECK(untimed(rows[0]) == untimed(rows[1]));
  CHECK(std::isfinite(rows[0].eps_inf));

  cfg.unknowns = {128};
  CHECK_THROWS_AS(run_convergence(cfg, sink), ConfigError);
}

TEST_CASE("equal media scatter nothing") {
  RunConfig cfg = parse(small_square);
  cfg.k2 = cfg.k1;
  cfg.unknowns = {1024};
  cfg.reference = ReferenceKind::Zero;
  std::ostringstream sink;
  const auto rows = run_solve(cfg, sink);
  CHECK(rows[0].eps_inf <= 1e-8);
}

TEST_CASE("far-field file and CSV are written") {
  RunConfig cfg = parse(small_square);
  cfg.csv_path = scratch("row.csv").string();
  cfg.farfield_path = scratch("far.csv").string();
  std::ostringstream sink;
  run_solve(cfg, sink);

  std::ifstream csv(cfg.csv_path);
  std::string header, row, extra;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK(header == csv_header());
  CHECK(row.rfind("CFIESK,", 0) == 0);
  CHECK_FALSE(std::getline(csv, extra));

  std::ifstream ff(cfg.farfield_path);
  std::string line;
  std::getline(ff, line);
  CHECK(line == "theta,re,im,abs");
  int count = 0;
  while (std::getline(ff, line)) ++count;
  CHECK(count == 64);
}

TEST_CASE("command-line exit codes") {
  const auto good = scratch("good.cfg"), bad = scratch("bad.cfg"), stuck = scratch("stuck.cfg");
  std::ofstream(good) << small_square;
  std::ofstream(bad) << "geometry.kind = square\nphysics.k1 = one\n";
  std::ofstream(stuck) << small_square << "gmres.max_iter = 2\n";
  CHECK(run_cli("solve " + good.string()) == 0);
  CHECK(run_cli("solve " + bad.string()) == 1);
  CHECK(run_cli("solve " + scratch("absent.cfg").string()) == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("solve " + stuck.string()) == 2);
  CHECK(run_cli("convergence " + good.string()) == 1);
}
