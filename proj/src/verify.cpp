#include "bie2d/verify.hpp"

#include "bie2d/gmres.hpp"
#include "bie2d/operators.hpp"
#include "bie2d/postprocess.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

namespace bie2d {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double max_abs(const CVector& v) { return v.cwiseAbs().maxCoeff(); }

CVector bandlimited(const GradedMesh& mesh, int mmax, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  CVector v = CVector::Zero(mesh.size());
  for (int m = -mmax; m <= mmax; ++m) {
    const cplx c(g(gen), g(gen));
    for (int j = 0; j < mesh.size(); ++j) v(j) += c * std::exp(I * double(m) * mesh[j].t);
  }
  return v;
}

TraceVector solve_traces(Formulation f, const TransmissionProblem& p, const GradedMesh& mesh, double tol) {
  const OperatorBank bank = build_operators(f, p, mesh, build_tables(mesh.n()));
  const LinearSystem sys = build_system(f, p, mesh, bank);
  const GmresResult r = gmres(sys.apply, sys.rhs, tol);
  if (!r.converged) throw std::runtime_error("verify: GMRES did not converge for " + to_string(f));
  return solution_to_traces(f, p, bank, r.solution);
}

}  // namespace

Check make_check(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance};
}

Check check_calderon() {
  const GradedMesh mesh = build_mesh(make_circle(1.0), 32, 3);
  const OperatorBundle b = assemble_bundle(1.0, mesh, build_tables(32), {true, true, false, true, false});
  double worst = 0.0;
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const CVector v = bandlimited(mesh, 10, seed);
    worst = std::max(worst, max_abs(b.S * (b.N * v) + 0.25 * v - b.K * (b.K * v)) / max_abs(v));
  }
  return make_check("Calderon S N + I/4 - K^2 (circle, n = 32)", worst, 1e-6);
}

Check check_null_field() {
  const auto p = TransmissionProblem::make(1.0, 4.0, RhoMode::One);
  const GradedMesh mesh = build_mesh(make_square(4.0), 128, 3);
  std::vector<Vec2> pts;
  for (int j = 0; j < 20; ++j) {
    const double a = 0.3 + 2.0 * pi * j / 20;
    pts.emplace_back(4.0 * std::cos(a), 4.0 * std::sin(a));
  }
  const CVector u = near_field(incident_traces(p, mesh), p, mesh, pts, Region::Exterior);
  return make_check("null field of the incident traces (square, 20 points)", max_abs(u), 1e-6);
}

Check check_laplace_constant() {
  const GradedMesh mesh = build_mesh(make_square(4.0), 64, 3);
  const CVector y = assemble_laplace_double(mesh).apply(CVector::Ones(mesh.size()));
  return make_check("Laplace double layer on 1 equals -1/2 (square, n = 64)",
                    max_abs(y + 0.5 * CVector::Ones(mesh.size())), 1e-8);
}

Check check_quadrature_exactness() {
  double worst = 0.0;
  for (int n : {4, 8, 16, 32}) {
    const QuadratureTables q = build_tables(n);
    CVector one = CVector::Ones(2 * n);
    for (int i = 0; i < 2 * n; ++i) worst = std::max({worst, std::abs(log_quadrature(q, one, i)), std::abs(pv_quadrature(q, one, i))});
    for (int m = 1; m < n; ++m) {
      for (int sgn : {1, -1}) {
        CVector e(2 * n);
        for (int j = 0; j < 2 * n; ++j) e(j) = std::exp(I * double(sgn * m) * (j * pi / n + pi / (2.0 * n)));
        for (int i = 0; i < 2 * n; ++i) {
          // log kernel: -(2 pi/m) e_m;  cotangent kernel on the derivative: -(m/2) e_m
          worst = std::max(worst, std::abs(log_quadrature(q, e, i) + 2.0 * pi / m * e(i)));
          worst = std::max(worst, std::abs(pv_quadrature(q, e, i) + 0.5 * m * e(i)));
        }
      }
    }
  }
  return make_check("log and cotangent quadrature exact on trigonometric monomials (n <= 32)", worst, 1e-11);
}

Check check_cubic_roots() {
  double violation = 0.0;
  for (double rho : {0.1, 0.5, 2.0, 10.0, 100.0}) {
    const double beta = (rho + 1.0) / (2.0 * (rho - 1.0));
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    C(0, 0) = 3.0 * beta;
    C(0, 2) = -beta;
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    const Eigen::Vector3cd roots = Eigen::EigenSolver<Eigen::Matrix3d>(C).eigenvalues();
    for (int i = 0; i < 3; ++i) {
      violation = std::max(violation, std::abs(roots(i).imag()) > 1e-10 ? std::abs(roots(i).imag()) : 0.0);
      violation = std::max(violation, std::max(0.0, 0.5 - std::abs(roots(i))));
    }
  }
  return make_check("cubic symbol roots real with |x| > 1/2", violation, 0.0);
}

Check check_far_field_constant() {
  const auto p = TransmissionProblem::make(1.0, 4.0, RhoMode::One);
  const GradedMesh mesh = build_mesh(make_square(4.0), 64, 3);
  const TraceVector t = solve_traces(Formulation::CFIESK, p, mesh, 1e-12);
  const double R = 1e6;
  const auto theta = far_field_angles(32);
  const FarField ff = far_field_at(t, p, mesh, theta);
  std::vector<Vec2> pts;
  for (double th : theta) pts.emplace_back(R * std::cos(th), R * std::sin(th));
  const CVector u = near_field(t, p, mesh, pts, Region::Exterior);
  double worst = 0.0;
  for (size_t j = 0; j < theta.size(); ++j)
    worst = std::max(worst, std::abs(std::sqrt(R) * std::exp(-I * p.k1 * R) * u(j) - ff.values(j)));
  return make_check("far-field constant at |x| = 1e6 (square, CFIESK)", worst, 1e-5);
}

std::vector<Check> check_circle_oracle(RhoMode mode) {
  const auto p = TransmissionProblem::make(1.0, 4.0, mode);
  const GradedMesh mesh = build_mesh(make_circle(2.0), 128, 3);
  const auto theta = far_field_angles(1024);
  const FarField mie = mie_reference(2.0, p, theta);
  std::vector<Check> out;
  const std::string tag = mode == RhoMode::One ? "rho = 1" : "rho = k1^2/k2^2";
  for (auto f : {Formulation::CFIESK, Formulation::CFIEFK2, Formulation::CFIER, Formulation::CFIERPS,
                 Formulation::SCFIE}) {
    const TraceVector t = solve_traces(f, p, mesh, 1e-12);
    out.push_back(make_check("disk series vs " + to_string(f) + " (radius 2, n = 128, " + tag + ")",
                             max_far_error(far_field_at(t, p, mesh, theta), mie),
                             f == Formulation::CFIESK ? 1e-6 : 1e-4));
  }
  return out;
}

std::string format_check(const Check& c) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "[%s] %s: %.3e (limit %.1e)", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                c.tolerance);
  return buf;
}

std::vector<Check> run_verify_suite(std::ostream& log) {
  std::vector<Check> all;
  auto add = [&](const Check& c) {
    log << format_check(c) << "\n";
    log.flush();
    all.push_back(c);
  };
  add(check_quadrature_exactness());
  add(check_calderon());
  add(check_laplace_constant());
  add(check_null_field());
  add(check_cubic_roots());
  add(check_far_field_constant());
  for (RhoMode m : {RhoMode::One, RhoMode::KRatio})
    for (const Check& c : check_circle_oracle(m)) add(c);
  return all;
}

}  // namespace bie2d
