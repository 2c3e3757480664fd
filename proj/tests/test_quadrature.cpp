#include "doctest.h"

#include "bie2d/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace bie2d;

namespace {
constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double node(int j, int n) { return j * pi / n + pi / (2.0 * n); }

CVector samples(int n, const std::function<cplx(double)>& f) {
  CVector v(2 * n);
  for (int j = 0; j < 2 * n; ++j) v(j) = f(node(j, n));
  return v;
}

// Brute-force log integral at t, folded onto (0, pi).
double log_integral(double t, const std::function<double(double)>& f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [&](double u) { return u > 0.0 ? 2.0 * std::log(2.0 * std::sin(u / 2)) * (f(t + u) + f(t - u)) : 0.0; };
  return ts.integrate(g, 0.0, pi, 1e-15);
}

// (1/4pi) PV int cot((tau - t)/2) f'(tau) dtau, with the singular part subtracted.
double pv_integral(double t, const std::function<double(double)>& df) {
  auto g = [&](double u) {
    const double s = std::sin(u / 2);
    if (std::abs(s) < 1e-300) return 0.0;
    return std::cos(u / 2) / s * (df(t + u) - df(t));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 2 * pi, 15, 1e-15) / (4 * pi);
}
}  // namespace

TEST_CASE("table structure") {
  for (int n : {2, 5, 16}) {
    const QuadratureTables q = build_tables(n);
    const int N = 2 * n;
    CHECK(q.h == doctest::Approx(pi / n));
    for (int i = 0; i < N; ++i) {
      CHECK(std::abs(q.R.row(i).sum()) < 1e-13);
      CHECK(std::abs(q.Dmat.row(i).sum()) < 1e-12);
      CHECK(q.Dmat(i, i) == 0.0);
      for (int j = 0; j < N; ++j) {
        CHECK(q.Dmat(i, j) == doctest::Approx(-q.Dmat(j, i)));
        CHECK(q.R(i, j) == q.R((i + 1) % N, (j + 1) % N));
        CHECK(q.T(i, j) == q.T((i + 3) % N, (j + 3) % N));
      }
    }
  }
}

TEST_CASE("differentiation matrix") {
  for (int n : {2, 3, 8, 32}) {
    const QuadratureTables q = build_tables(n);
    const CVector c = samples(n, [](double t) { return std::cos(t); });
    const CVector s = samples(n, [](double t) { return -std::sin(t); });
    CHECK((q.Dmat.cast<cplx>() * c - s).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((differentiate(c) - s).cwiseAbs().maxCoeff() < 1e-12);
    // closed form with half-angle cotangent
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j)
        if (i != j) {
          const double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
          CHECK(q.Dmat(i, j) == doctest::Approx(0.5 * sgn / std::tan((i - j) * pi / (2.0 * n))));
        }
  }
  const QuadratureTables q = build_tables(16);
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  CMatrix A(7, 32);
  for (int i = 0; i < A.size(); ++i) A(i) = cplx(g(rng), g(rng));
  const CMatrix ref = A * q.Dmat.cast<cplx>();
  right_multiply_dmat(A);
  CHECK((A - ref).cwiseAbs().maxCoeff() < 1e-12);
  CVector v = A.row(2).transpose();
  CHECK((differentiate(v) - q.Dmat.cast<cplx>() * v).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("log quadrature on trigonometric monomials") {
  for (int n : {4, 8, 16, 32}) {
    const QuadratureTables q = build_tables(n);
    CHECK(std::abs(log_quadrature(q, CVector::Ones(2 * n), 0)) < 1e-13);
    for (int m = 1; m < n; ++m) {
      const CVector c = samples(n, [m](double t) { return std::cos(m * t); });
      const CVector s = samples(n, [m](double t) { return std::sin(m * t); });
      for (int i : {0, n / 2 + 1, 2 * n - 1}) {
        const double t = node(i, n);
        CHECK(std::abs(log_quadrature(q, c, i) + 2 * pi / m * std::cos(m * t)) < 1e-11);
        CHECK(std::abs(log_quadrature(q, s, i) + 2 * pi / m * std::sin(m * t)) < 1e-11);
        if (m % 5 == 1) {
          const double oc = log_integral(t, [m](double x) { return std::cos(m * x); });
          CHECK(std::abs(log_quadrature(q, c, i) - oc) < 1e-11);
        }
      }
    }
  }
  const QuadratureTables q = build_tables(4);
  CHECK_THROWS_AS(log_quadrature(q, CVector::Ones(7), 0), std::invalid_argument);
}

TEST_CASE("pv quadrature on trigonometric monomials") {
  for (int n : {4, 8, 16, 32}) {
    const QuadratureTables q = build_tables(n);
    CHECK(std::abs(pv_quadrature(q, CVector::Ones(2 * n), 1)) < 1e-13);
    for (int m = 1; m < n; ++m) {
      for (int sgn : {1, -1}) {
        const CVector e = samples(n, [m, sgn](double t) { return std::exp(I * double(sgn * m) * t); });
        for (int i : {0, n + 1}) {
          const double t = node(i, n);
          const cplx expect = -0.5 * m * std::exp(I * double(sgn * m) * t);
          CHECK(std::abs(pv_quadrature(q, e, i) - expect) < 1e-11);
          if (m % 4 == 1 && sgn == 1) {
            const double re = pv_integral(t, [m](double x) { return -m * std::sin(m * x); });
            const double im = pv_integral(t, [m](double x) { return m * std::cos(m * x); });
            CHECK(std::abs(pv_quadrature(q, e, i) - cplx(re, im)) < 1e-11);
          }
        }
      }
    }
  }
  const QuadratureTables q = build_tables(8);
  std::mt19937 rng(1);
  std::normal_distribution<double> g;
  CVector f(16), h(16);
  for (int i = 0; i < 16; ++i) f(i) = cplx(g(rng), g(rng)), h(i) = cplx(g(rng), g(rng));
  const cplx a(0.3, -2.0), b(1.5, 0.25);
  CHECK(std::abs(pv_quadrature(q, a * f + b * h, 3) - a * pv_quadrature(q, f, 3) - b * pv_quadrature(q, h, 3)) < 1e-14);
}

TEST_CASE("trigonometric interpolation") {
  const int n = 8;
  std::mt19937 rng(2);
  std::normal_distribution<double> g;
  CVector f(2 * n);
  for (int i = 0; i < 2 * n; ++i) f(i) = cplx(g(rng), g(rng));
  for (int j = 0; j < 2 * n; ++j) CHECK(trig_interp_eval(f, node(j, n)) == f(j));
  const CVector c3 = samples(n, [](double t) { return std::cos(3 * t); });
  for (double t = -1.0; t < 7.0; t += 0.173) CHECK(std::abs(trig_interp_eval(c3, t) - std::cos(3 * t)) < 1e-12);
  // aliasing: compare with explicit Fourier reconstruction
  const CVector al = samples(n, [](double t) { return std::cos((n + 1) * t); });
  for (double t = 0.1; t < 6.3; t += 0.31) {
    cplx ref = 0.0;
    for (int j = 0; j < 2 * n; ++j) {
      const double d = t - node(j, n);
      double k = 1.0 + std::cos(n * d);
      for (int m = 1; m < n; ++m) k += 2.0 * std::cos(m * d);
      ref += al(j) * k / (2.0 * n);
    }
    CHECK(std::abs(trig_interp_eval(al, t) - ref) < 1e-12);
  }
}

TEST_CASE("Fourier multipliers") {
  const cplx kappa(2.5, 1.0);
  const int n = 16;
  for (int m : {-15, -3, 0, 1, 7, 15}) {
    const CVector e = samples(n, [m](double t) { return std::exp(I * double(m) * t); });
    for (Symbol s : {Symbol::S, Symbol::N}) {
      const CVector out = apply_multiplier(s, kappa, e);
      CHECK((out - symbol_value(s, kappa, m) * e).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((multiplier_matrix(s, kappa, n) * e - out).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  CHECK(std::abs(symbol_value(Symbol::S, kappa, 0) - 1.0 / (2.0 * std::sqrt(-kappa * kappa))) < 1e-15);
  CHECK(std::abs(symbol_value(Symbol::S, kappa, 2) - 1.0 / (2.0 * std::sqrt(cplx(4.0) - kappa * kappa))) < 1e-15);
  CHECK(std::abs(symbol_value(Symbol::N, kappa, 5) + 0.5 * std::sqrt(cplx(25.0) - kappa * kappa)) < 1e-15);
  CHECK(std::abs(2.0 * 1e6 * symbol_value(Symbol::S, kappa, 1000000) - 1.0) < 1e-10);
  const CMatrix P = multiplier_matrix(Symbol::N, kappa, 8);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) CHECK(std::abs(P(i, j) - P((i + 1) % 16, (j + 1) % 16)) < 1e-15);
  CHECK_THROWS_AS(apply_multiplier(Symbol::S, cplx(2.0, 0.0), CVector::Ones(8)), std::domain_error);
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  CVector f(64);
  for (int i = 0; i < 64; ++i) f(i) = cplx(g(rng), g(rng));
  CHECK((apply_symbol([](int) { return cplx(1.0); }, f) - f).cwiseAbs().maxCoeff() < 1e-13);
}
