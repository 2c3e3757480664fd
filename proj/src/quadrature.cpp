#include "bie2d/quadrature.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bie2d {

namespace {

constexpr double pi = std::numbers::pi;

// Mode number attached to FFT bin k of length 2n; the Nyquist bin maps to n.
int mode_of(int k, int n) { return k <= n ? k : k - 2 * n; }

void check_length(const CVector& f, const QuadratureTables& t) {
  if (f.size() != 2 * t.n) throw std::invalid_argument("quadrature: length mismatch");
}

void check_kappa(cplx kappa) {
  if (!(kappa.imag() > 0.0)) throw std::domain_error("multiplier: kappa must have positive imaginary part");
}

}  // namespace

QuadratureTables build_tables(int n) {
  if (n < 2) throw std::invalid_argument("build_tables: n must be at least 2");
  const int N = 2 * n;
  QuadratureTables q;
  q.n = n;
  q.h = pi / n;
  std::vector<double> r(N), t(N), d(N);
  for (int k = 0; k < N; ++k) {
    const double delta = k * pi / n;
    double sr = 0.0, st = 0.0;
    for (int m = 1; m < n; ++m) {
      const double c = std::cos(m * delta);
      sr += c / m;
      st += m * c;
    }
    const double cn = (k % 2) ? -1.0 : 1.0;
    r[k] = -2.0 * pi / n * sr - pi / (double(n) * n) * cn;
    t[k] = -st / (2.0 * n) - 0.25 * cn;
    d[k] = k == 0 ? 0.0 : 0.5 * ((k % 2) ? -1.0 : 1.0) / std::tan(k * pi / (2.0 * n));
  }
  q.R.resize(N, N);
  q.T.resize(N, N);
  q.Dmat.resize(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int k = ((i - j) % N + N) % N;
      q.R(i, j) = r[k];
      q.T(i, j) = t[k];
      q.Dmat(i, j) = d[k];
    }
  }
  return q;
}

cplx log_quadrature(const QuadratureTables& tables, const CVector& f, int i) {
  check_length(f, tables);
  return (tables.R.row(i).cast<cplx>() * f)(0);
}

cplx pv_quadrature(const QuadratureTables& tables, const CVector& f, int i) {
  check_length(f, tables);
  return (tables.T.row(i).cast<cplx>() * f)(0);
}

cplx trig_interp_eval(const CVector& values, double t) {
  const int N = int(values.size());
  if (N < 2 || N % 2) throw std::invalid_argument("trig_interp_eval: need an even number of values");
  const int n = N / 2;
  cplx sum = 0.0;
  for (int j = 0; j < N; ++j) {
    const double d = t - (j * pi / n + pi / (2.0 * n));
    const double half = std::sin(d / 2);
    if (std::abs(half) < 1e-15) return values(j);
    sum += values(j) * (std::sin(n * d) * std::cos(d / 2) / half / (2.0 * n));
  }
  return sum;
}

CVector differentiate(const CVector& v) {
  const int N = int(v.size());
  if (N % 2) throw std::invalid_argument("differentiate: odd length");
  const int n = N / 2;
  Eigen::FFT<double> fft;
  std::vector<cplx> in(v.data(), v.data() + N), spec, out;
  fft.fwd(spec, in);
  for (int k = 0; k < N; ++k) {
    const int m = mode_of(k, n);
    spec[k] *= (m == n) ? cplx(0.0) : cplx(0.0, m);
  }
  fft.inv(out, spec);
  return Eigen::Map<CVector>(out.data(), N);
}

void right_multiply_dmat(CMatrix& A) {
  const int N = int(A.cols());
  if (N % 2) throw std::invalid_argument("right_multiply_dmat: odd size");
  const int n = N / 2;
  Eigen::FFT<double> fft;
  std::vector<cplx> in(N), spec, out;
  for (int r = 0; r < A.rows(); ++r) {
    for (int j = 0; j < N; ++j) in[j] = A(r, j);
    fft.fwd(spec, in);
    for (int k = 0; k < N; ++k) {
      const int m = mode_of(k, n);
      spec[k] *= (m == n) ? cplx(0.0) : cplx(0.0, -m);
    }
    fft.inv(out, spec);
    for (int j = 0; j < N; ++j) A(r, j) = out[j];
  }
}

cplx symbol_value(Symbol kind, cplx kappa, int m) {
  check_kappa(kappa);
  const cplx root = std::sqrt(cplx(double(m) * m) - kappa * kappa);
  return kind == Symbol::N ? -0.5 * root : 1.0 / (2.0 * root);
}

CVector apply_multiplier(Symbol kind, cplx kappa, const CVector& values) {
  check_kappa(kappa);
  return apply_symbol([&](int m) { return symbol_value(kind, kappa, m); }, values);
}

CVector apply_symbol(const std::function<cplx(int)>& sigma, const CVector& values) {
  const int N = int(values.size());
  if (N % 2) throw std::invalid_argument("apply_multiplier: odd length");
  const int n = N / 2;
  Eigen::FFT<double> fft;
  std::vector<cplx> in(values.data(), values.data() + N), spec, out;
  fft.fwd(spec, in);
  for (int k = 0; k < N; ++k) spec[k] *= sigma(mode_of(k, n));
  fft.inv(out, spec);
  return Eigen::Map<CVector>(out.data(), N);
}

CMatrix multiplier_matrix(Symbol kind, cplx kappa, int n) {
  check_kappa(kappa);
  const int N = 2 * n;
  std::vector<cplx> col(N);
  for (int k = 0; k < N; ++k) {
    const double d = k * pi / n;
    cplx s = symbol_value(kind, kappa, 0);
    for (int m = 1; m < n; ++m) s += 2.0 * symbol_value(kind, kappa, m) * std::cos(m * d);
    s += symbol_value(kind, kappa, n) * ((k % 2) ? -1.0 : 1.0);
    col[k] = s / double(N);
  }
  CMatrix P(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) P(i, j) = col[((i - j) % N + N) % N];
  return P;
}

}  // namespace bie2d
