#pragma once

#include "bie2d/config.hpp"
#include "bie2d/postprocess.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bie2d {

struct SolveReport {
  Formulation formulation = Formulation::CFIESK;
  TransmissionProblem problem;
  int unknowns = 0, p = 3;
  double tol = 0.0;
  int iterations = 0;
  bool converged = false;
  double eps_inf = 0.0;  // NaN when no reference was requested
  double matvec_ms = 0.0, total_ms = 0.0;
  std::vector<double> residual_history;
  FarField far;
};

// Assemble, solve with GMRES and evaluate the far field at theta.
SolveReport solve_case(const Curve& curve, const TransmissionProblem& problem, Formulation f, int unknowns, int p,
                       double tol, int max_iter, const std::vector<double>& theta);

// Reference far fields, memoized in memory and optionally on disk.
class ReferenceCache {
 public:
  explicit ReferenceCache(std::string directory = {}) : dir_(std::move(directory)) {}

  // CFIESK at the given unknowns (p = 3), or the disk series, or zero.
  const FarField& get(const RunConfig& cfg, const TransmissionProblem& problem, int unknowns,
                      const std::vector<double>& theta, std::ostream& log);

 private:
  std::string dir_;
  std::map<std::string, FarField> memo_;
};

// Reference unknowns: the configured value or twice the largest count.
int reference_unknowns(const RunConfig& cfg, int finest);

std::vector<SolveReport> run_solve(const RunConfig& cfg, std::ostream& log);
std::vector<SolveReport> run_convergence(const RunConfig& cfg, std::ostream& log);
std::vector<SolveReport> run_bench(const RunConfig& cfg, std::ostream& log);

const char* csv_header();
std::string csv_row(const SolveReport& r);
void write_csv(const std::string& path, const std::vector<SolveReport>& rows);
void write_far_field(const std::string& path, const FarField& ff);

// BIE2D_THREADS overrides the configured count; returns the count in effect.
int configure_threads(int configured);

}  // namespace bie2d
