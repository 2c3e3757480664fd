#include "bie2d/harness.hpp"
#include "bie2d/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>

using namespace bie2d;

namespace {

enum Exit { Ok = 0, BadConfig = 1, NoConvergence = 2, Internal = 3 };

int finish(const std::vector<SolveReport>& rows) {
  const bool all = std::all_of(rows.begin(), rows.end(), [](const SolveReport& r) { return r.converged; });
  if (!all) std::cerr << "GMRES did not reach the requested tolerance for at least one run\n";
  return all ? Ok : NoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nystrom solvers for two-dimensional Helmholtz transmission problems"};
  app.require_subcommand(1);
  std::string cfg_path;
  auto* solve = app.add_subcommand("solve", "solve one configuration and write CSV and far-field samples");
  solve->add_option("config", cfg_path, "configuration file")->required();
  auto* conv = app.add_subcommand("convergence", "refinement study against a reference far field");
  conv->add_option("config", cfg_path, "configuration file")->required();
  auto* bench = app.add_subcommand("bench", "wavenumber sweep with iteration counts and matvec timings");
  bench->add_option("config", cfg_path, "configuration file")->required();
  app.add_subcommand("verify", "run the identity and oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : BadConfig;
  }

  try {
    if (app.got_subcommand("verify")) {
      configure_threads(0);
      const auto checks = run_verify_suite(std::cout);
      return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }) ? Ok : Internal;
    }
    const RunConfig cfg = load_config(cfg_path);
    std::cout << "threads: " << configure_threads(cfg.threads) << "\n";
    if (app.got_subcommand("solve")) return finish(run_solve(cfg, std::cout));
    if (app.got_subcommand("convergence")) return finish(run_convergence(cfg, std::cout));
    return finish(run_bench(cfg, std::cout));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << cfg_path << ": " << e.what() << "\n";
    return BadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return BadConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  }
}
