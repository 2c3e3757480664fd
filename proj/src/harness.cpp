#include "bie2d/harness.hpp"

#include "bie2d/gmres.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bie2d {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Shortest decimal that round-trips, so 1e-12 prints as 1e-12.
std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string geometry_key(const GeometryParams& g) {
  std::ostringstream s;
  s.precision(17);
  s << g.kind;
  if (g.kind == "square") s << "_s" << g.side;
  if (g.kind == "ushape") s << "_s" << g.side << "_w" << g.notch_width << "_d" << g.notch_depth;
  if (g.kind == "lq_ball") s << "_q" << g.q << "_r" << g.radius;
  if (g.kind == "circle") s << "_r" << g.radius;
  if (g.kind == "ellipse") s << "_a" << g.semi_a << "_b" << g.semi_b;
  if (g.kind == "polygon")
    for (const auto& v : g.vertices) s << "_" << v.x() << "," << v.y();
  return s.str();
}

bool read_far_field(const std::string& path, const std::vector<double>& theta, FarField& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  std::getline(in, line);
  FarField ff{theta, CVector(theta.size())};
  for (size_t j = 0; j < theta.size(); ++j) {
    double th, re, im, ab;
    char c;
    if (!(in >> th >> c >> re >> c >> im >> c >> ab)) return false;
    if (std::abs(th - theta[j]) > 1e-12) return false;
    ff.values(j) = cplx(re, im);
  }
  out = std::move(ff);
  return true;
}

void require_single(const RunConfig& cfg) {
  if (cfg.unknowns.size() != 1) throw ConfigError(0, "solve needs exactly one discretization.unknowns value");
}

void print_table(const std::vector<SolveReport>& rows, std::ostream& log) {
  log << "formulation      k1     k2   unknowns  iter    eps_inf     order  matvec_ms\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const SolveReport& r = rows[i];
    std::string order = "-";
    // empirical order against the previous row of the same formulation and wavenumbers
    if (i > 0 && rows[i - 1].formulation == r.formulation && rows[i - 1].problem.k1 == r.problem.k1 &&
        rows[i - 1].problem.k2 == r.problem.k2 && rows[i - 1].unknowns * 2 == r.unknowns && r.eps_inf > 0.0)
      order = fmt("%.2f", std::log2(rows[i - 1].eps_inf / r.eps_inf));
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %6g %6g %10d %5d%s %10.3e %7s %10.3f\n", to_string(r.formulation).c_str(),
                  r.problem.k1, r.problem.k2, r.unknowns, r.iterations, r.converged ? " " : "!", r.eps_inf,
                  order.c_str(), r.matvec_ms);
    log << buf;
  }
}

void emit(const RunConfig& cfg, const std::vector<SolveReport>& rows, std::ostream& log) {
  print_table(rows, log);
  if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, rows);
}

}  // namespace

SolveReport solve_case(const Curve& curve, const TransmissionProblem& problem, Formulation f, int unknowns, int p,
                       double tol, int max_iter, const std::vector<double>& theta) {
  const auto t0 = Clock::now();
  const int n = n_for_unknowns(f, unknowns);
  const GradedMesh mesh = build_mesh(curve, n, p);
  const QuadratureTables tables = build_tables(n);
  const OperatorBank bank = build_operators(f, problem, mesh, tables);
  const LinearSystem sys = build_system(f, problem, mesh, bank);

  double matvec_total = 0.0;
  int matvecs = 0;
  const MatVec timed = [&](const CVector& x) {
    const auto s = Clock::now();
    CVector y = sys.apply(x);
    matvec_total += ms_since(s);
    ++matvecs;
    return y;
  };
  const GmresResult g = gmres(timed, sys.rhs, tol, max_iter);
  const TraceVector traces = solution_to_traces(f, problem, bank, g.solution);

  SolveReport r;
  r.formulation = f;
  r.problem = problem;
  r.unknowns = unknowns;
  r.p = p;
  r.tol = tol;
  r.iterations = g.iterations;
  r.converged = g.converged;
  r.eps_inf = std::numeric_limits<double>::quiet_NaN();
  r.residual_history = g.residual_history;
  r.far = far_field_at(traces, problem, mesh, theta);
  r.matvec_ms = matvecs ? matvec_total / matvecs : 0.0;
  r.total_ms = ms_since(t0);
  return r;
}

int reference_unknowns(const RunConfig& cfg, int finest) {
  const int u = cfg.reference_unknowns > 0 ? cfg.reference_unknowns : 2 * finest;
  return 4 * ((u + 3) / 4);
}

const FarField& ReferenceCache::get(const RunConfig& cfg, const TransmissionProblem& problem, int unknowns,
                                    const std::vector<double>& theta, std::ostream& log) {
  std::ostringstream key;
  key.precision(17);
  key << to_string(cfg.reference) << "_" << geometry_key(cfg.geometry) << "_k" << problem.k1 << "_" << problem.k2
      << "_rho" << problem.rho << "_d" << problem.direction.x() << "," << problem.direction.y() << "_dirs"
      << theta.size();
  if (cfg.reference == ReferenceKind::Refined) key << "_u" << unknowns << "_tol" << cfg.reference_tol;
  const std::string k = key.str();
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;

  std::string file;
  if (!dir_.empty() && cfg.reference == ReferenceKind::Refined) {
    std::string name = k;
    for (char& c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_') c = '_';
    file = (std::filesystem::path(dir_) / (name + ".csv")).string();
    FarField cached;
    if (read_far_field(file, theta, cached)) {
      log << "reference: loaded " << file << "\n";
      return memo_[k] = std::move(cached);
    }
  }

  FarField ff;
  switch (cfg.reference) {
    case ReferenceKind::Refined: {
      log << "reference: CFIESK at " << unknowns << " unknowns, tol " << cfg.reference_tol << "\n";
      const SolveReport r = solve_case(builtin_geometry(cfg.geometry), problem, Formulation::CFIESK, unknowns, 3,
                                       cfg.reference_tol, 0, theta);
      if (!r.converged) throw std::runtime_error("reference solve did not converge");
      ff = r.far;
      if (!file.empty()) {
        std::filesystem::create_directories(dir_);
        write_far_field(file, ff);
      }
      break;
    }
    case ReferenceKind::Mie:
      if (cfg.geometry.kind != "circle") throw ConfigError(0, "reference.kind = mie needs geometry.kind = circle");
      ff = mie_reference(cfg.geometry.radius, problem, theta);
      break;
    case ReferenceKind::Zero:
      ff = FarField{theta, CVector::Zero(theta.size())};
      break;
    case ReferenceKind::None:
      throw std::logic_error("no reference requested");
  }
  return memo_[k] = std::move(ff);
}

std::vector<SolveReport> run_solve(const RunConfig& cfg, std::ostream& log) {
  require_single(cfg);
  if (cfg.formulations.size() != 1) throw ConfigError(0, "solve needs exactly one formulation");
  const Formulation f = cfg.formulations.front();
  const TransmissionProblem problem = cfg.problem(cfg.k1, cfg.k2);
  const auto theta = far_field_angles(cfg.num_dirs);
  SolveReport r = solve_case(builtin_geometry(cfg.geometry), problem, f, cfg.unknowns.front(), cfg.order(f), cfg.tol,
                             cfg.max_iter, theta);
  if (cfg.reference != ReferenceKind::None) {
    ReferenceCache cache(cfg.reference_cache);
    r.eps_inf = max_far_error(r.far, cache.get(cfg, problem, reference_unknowns(cfg, r.unknowns), theta, log));
  }
  if (!cfg.farfield_path.empty()) write_far_field(cfg.farfield_path, r.far);
  std::vector<SolveReport> rows{r};
  emit(cfg, rows, log);
  return rows;
}

std::vector<SolveReport> run_convergence(const RunConfig& cfg, std::ostream& log) {
  if (cfg.unknowns.size() < 2) throw ConfigError(0, "convergence needs at least two discretization.unknowns values");
  const TransmissionProblem problem = cfg.problem(cfg.k1, cfg.k2);
  const auto theta = far_field_angles(cfg.num_dirs);
  const Curve curve = builtin_geometry(cfg.geometry);
  ReferenceCache cache(cfg.reference_cache);
  const FarField* ref = nullptr;
  if (cfg.reference != ReferenceKind::None) {
    const int finest = *std::max_element(cfg.unknowns.begin(), cfg.unknowns.end());
    ref = &cache.get(cfg, problem, reference_unknowns(cfg, finest), theta, log);
  }
  std::vector<SolveReport> rows;
  for (Formulation f : cfg.formulations) {
    for (int u : cfg.unknowns) {
      SolveReport r = solve_case(curve, problem, f, u, cfg.order(f), cfg.tol, cfg.max_iter, theta);
      if (ref) r.eps_inf = max_far_error(r.far, *ref);
      rows.push_back(std::move(r));
    }
  }
  emit(cfg, rows, log);
  return rows;
}

std::vector<SolveReport> run_bench(const RunConfig& cfg, std::ostream& log) {
  if (cfg.cases.empty()) throw ConfigError(0, "bench needs bench.cases");
  const auto theta = far_field_angles(cfg.num_dirs);
  const Curve curve = builtin_geometry(cfg.geometry);
  ReferenceCache cache(cfg.reference_cache);
  std::vector<SolveReport> rows;
  for (const BenchCase& c : cfg.cases) {
    const TransmissionProblem problem = cfg.problem(c.k1, c.k2);
    const FarField* ref = nullptr;
    if (cfg.reference != ReferenceKind::None)
      ref = &cache.get(cfg, problem, reference_unknowns(cfg, c.unknowns), theta, log);
    for (Formulation f : cfg.formulations) {
      SolveReport r = solve_case(curve, problem, f, c.unknowns, cfg.order(f), cfg.tol, cfg.max_iter, theta);
      if (ref) r.eps_inf = max_far_error(r.far, *ref);
      rows.push_back(std::move(r));
    }
  }
  emit(cfg, rows, log);
  return rows;
}

const char* csv_header() {
  return "formulation,k1,k2,rho,unknowns,p,gmres_tol,iterations,eps_inf,matvec_ms,total_ms";
}

std::string csv_row(const SolveReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%s,%s,%s,%d,%d,%s,%d,%.6e,%.3f,%.3f", to_string(r.formulation).c_str(),
                shortest(r.problem.k1).c_str(), shortest(r.problem.k2).c_str(), shortest(r.problem.rho).c_str(),
                r.unknowns, r.p, shortest(r.tol).c_str(), r.iterations, r.eps_inf, r.matvec_ms, r.total_ms);
  return buf;
}

void write_csv(const std::string& path, const std::vector<SolveReport>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << csv_header() << "\n";
  for (const auto& r : rows) out << csv_row(r) << "\n";
}

void write_far_field(const std::string& path, const FarField& ff) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "theta,re,im,abs\n";
  char buf[160];
  for (size_t j = 0; j < ff.theta.size(); ++j) {
    const cplx v = ff.values(j);
    std::snprintf(buf, sizeof buf, "%.14e,%.14e,%.14e,%.14e\n", ff.theta[j], v.real(), v.imag(), std::abs(v));
    out << buf;
  }
}

int configure_threads(int configured) {
  int threads = configured;
  if (const char* env = std::getenv("BIE2D_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) threads = t;
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace bie2d
