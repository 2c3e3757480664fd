#include "bie2d/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bie2d {

namespace {

constexpr double pi = std::numbers::pi;

void check_mesh(const GradedMesh& mesh, const QuadratureTables& tables) {
  if (mesh.n() != tables.n) throw std::invalid_argument("operators: mesh and tables disagree on n");
}

std::string label_of(const std::string& kind, cplx k) {
  std::ostringstream os;
  os << kind << "(k=" << k.real();
  if (k.imag() != 0.0) os << (k.imag() > 0 ? "+" : "") << k.imag() << "i";
  os << ")";
  return os.str();
}

// ln(4 sin^2(u/2)) and cot(u/2) for u = (i - j) h, indexed by (i - j) mod 2n.
struct PairTables {
  std::vector<double> log_term, cot_half;
  explicit PairTables(int N, double h) : log_term(N), cot_half(N) {
    for (int d = 1; d < N; ++d) {
      const double u = d * h;
      log_term[d] = 2.0 * std::log(2.0 * std::abs(std::sin(0.5 * u)));
      cot_half[d] = 1.0 / std::tan(0.5 * u);
    }
  }
};

int offset(int i, int j, int N) { return ((i - j) % N + N) % N; }

}  // namespace

OperatorBundle assemble_bundle(double k, const GradedMesh& mesh, const QuadratureTables& tables, OperatorRequest req) {
  check_mesh(mesh, tables);
  if (!(k > 0.0)) throw std::invalid_argument("assemble: wavenumber must be positive");
  const int N = mesh.size();
  const double h = mesh.h();
  const PairTables pt(N, h);
  KernelMask mask{req.S, req.K, req.KT, req.N, req.N, req.HD};

  OperatorBundle b;
  b.k = k;
  Eigen::MatrixXd H0;
  CMatrix Dpart;
  if (req.S) b.S.resize(N, N);
  if (req.K) {
    b.K.resize(N, N);
    H0.resize(N, N);
  }
  if (req.KT) b.KT.resize(N, N);
  if (req.N) {
    b.N.resize(N, N);
    Dpart.resize(N, N);
  }
  if (req.HD) b.HD.resize(N, N);

  auto store = [&](int i, int j, const KernelSet& s, double Rij) {
    if (req.S) b.S(i, j) = Rij * s.M.log_coeff + h * s.M.smooth;
    if (req.K) {
      b.K(i, j) = Rij * s.H.log_coeff + h * s.H.smooth;
      H0(i, j) = h * s.H0;
    }
    if (req.KT) b.KT(i, j) = Rij * s.HT.log_coeff + h * s.HT.smooth;
    if (req.N) {
      b.N(i, j) = tables.T(i, j) + Rij * s.Q.log_coeff + h * s.Q.smooth;
      Dpart(i, j) = Rij * s.D.log_coeff + h * s.D.smooth;
    }
    if (req.HD) b.HD(i, j) = Rij * s.L.log_coeff + h * s.L.smooth;
  };

#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < N; ++i) {
    const CurvePoint& a = mesh[i];
    store(i, i, kernel_set_diagonal(k, a, mask), tables.R(i, i));
    for (int j = i + 1; j < N; ++j) {
      const CurvePoint& c = mesh[j];
      const BesselAt bs = bessel_at(k, (a.x - c.x).norm());
      const int dij = offset(i, j, N), dji = offset(j, i, N);
      store(i, j, kernel_set_with(k, bs, a, c, pt.log_term[dij], pt.cot_half[dij], mask), tables.R(i, j));
      store(j, i, kernel_set_with(k, bs, c, a, pt.log_term[dji], pt.cot_half[dji], mask), tables.R(j, i));
    }
  }

  if (req.K) {
    // Laplace compensation: the H_0 part of the kernel acts on psi(tau) - psi(t).
    for (int i = 0; i < N; ++i) {
      double sum = 0.0;
      for (int j = 0; j < N; ++j)
        if (j != i) sum += H0(i, j);
      b.K(i, i) = -sum - 0.5;
    }
  }
  if (req.N) {
    right_multiply_dmat(Dpart);
    b.N += Dpart;
  }
  return b;
}

DenseOperator assemble_single(cplx k, const GradedMesh& mesh, const QuadratureTables& tables) {
  if (!(k.real() > 0.0) || k.imag() < 0.0) throw std::invalid_argument("assemble_single: invalid wavenumber");
  if (k.imag() == 0.0) {
    OperatorRequest r;
    r.S = true;
    return {label_of("S", k), assemble_bundle(k.real(), mesh, tables, r).S};
  }
  return {label_of("S", k), windowed_single(k, mesh, tables, window_width(k, mesh))};
}

DenseOperator assemble_double(double k, const GradedMesh& mesh, const QuadratureTables& tables) {
  OperatorRequest r;
  r.K = true;
  return {label_of("K", k), assemble_bundle(k, mesh, tables, r).K};
}

DenseOperator assemble_laplace_double(const GradedMesh& mesh) {
  const int N = mesh.size();
  const double h = mesh.h();
  CMatrix A(N, N);
  for (int i = 0; i < N; ++i) {
    double sum = 0.0;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      const Vec2 r = mesh[i].x - mesh[j].x;
      const double v = h * mesh[j].nu.dot(r) / (2.0 * pi * r.squaredNorm());
      A(i, j) = v;
      sum += v;
    }
    A(i, i) = -sum - 0.5;
  }
  return {"K0", std::move(A)};
}

DenseOperator assemble_adjdouble_w(double k, const GradedMesh& mesh, const QuadratureTables& tables) {
  OperatorRequest r;
  r.KT = true;
  return {label_of("KT", k), assemble_bundle(k, mesh, tables, r).KT};
}

DenseOperator assemble_hyper_w(cplx k, const GradedMesh& mesh, const QuadratureTables& tables) {
  if (!(k.real() > 0.0) || k.imag() < 0.0) throw std::invalid_argument("assemble_hyper_w: invalid wavenumber");
  OperatorRequest r;
  r.N = true;
  CMatrix N0 = assemble_bundle(k.real(), mesh, tables, r).N;
  if (k.imag() > 0.0) N0 += windowed_hyper_diff(k, k.real(), mesh, tables, window_width(k, mesh));
  return {label_of("N", k), std::move(N0)};
}

DenseOperator assemble_hyper_diff_w(double k1, double k2, const GradedMesh& mesh, const QuadratureTables& tables) {
  const std::string label = "N(k=" + std::to_string(k1) + ")-N(k=" + std::to_string(k2) + ")";
  check_mesh(mesh, tables);
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw std::invalid_argument("assemble_hyper_diff_w: wavenumbers must be positive");
  const int N = mesh.size();
  if (k1 == k2) return {label, CMatrix::Zero(N, N)};
  OperatorRequest r;
  r.HD = true;
  CMatrix D = assemble_bundle(k1, mesh, tables, r).HD;
  D -= assemble_bundle(k2, mesh, tables, r).HD;
  return {label, std::move(D)};
}

DenseOperator assemble_ps(Symbol kind, cplx kappa, const GradedMesh& mesh, const QuadratureTables& tables) {
  check_mesh(mesh, tables);
  // Both act in the parameter variable.  N^w already carries the |x'| weight
  // (symbol -|m|/2 in t), so no further pointwise scaling is applied.
  CMatrix P = multiplier_matrix(kind, kappa, mesh.n());
  return {label_of(kind == Symbol::S ? "PS_S" : "PS_N", kappa), std::move(P)};
}

double window(double u, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("window: width must be positive");
  u = std::remainder(u, 2.0 * pi);
  const double a = std::abs(u), half = 0.5 * delta;
  if (a <= half) return 1.0;
  if (a >= delta) return 0.0;
  const double x = (a - half) / half;
  return std::exp(2.0 * std::exp(-1.0 / x) / (x - 1.0));
}

double window_width(cplx kappa, const GradedMesh& mesh) {
  const double im = kappa.imag();
  const int N = mesh.size();
  const double floor_width = 12.0 * mesh.h();
  double delta = pi / 2;
  if (im <= 0.0) return delta;
  auto max_chord = [&](double d) {
    double m = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        if (std::abs(std::remainder((i - j) * mesh.h(), 2.0 * pi)) < d) m = std::max(m, (mesh[i].x - mesh[j].x).norm());
    return m;
  };
  while (delta * 0.8 >= floor_width && max_chord(delta) * im > 8.0) delta *= 0.8;
  return std::max(delta, floor_width);
}

namespace {

// chi * (R log + h smooth) + (1 - chi) h full, where full = kernel value.
template <class Eval, class Diag>
CMatrix windowed_assemble(const GradedMesh& mesh, const QuadratureTables& tables, double delta, Eval eval,
                          Diag diag) {
  check_mesh(mesh, tables);
  const int N = mesh.size();
  const double h = mesh.h();
  const PairTables pt(N, h);
  std::vector<double> chi(N);
  for (int d = 0; d < N; ++d) chi[d] = window(d * h, delta);
  CMatrix A(N, N);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < N; ++i) {
    const SplitValue s = diag(mesh[i]);
    A(i, i) = tables.R(i, i) * s.log_coeff + h * s.smooth;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      const int d = offset(i, j, N);
      const SplitValue v = eval(mesh[i], mesh[j], pt.log_term[d]);
      const cplx full = v.value(pt.log_term[d]);
      A(i, j) = chi[d] * (tables.R(i, j) * v.log_coeff + h * v.smooth) + (1.0 - chi[d]) * h * full;
    }
  }
  return A;
}

}  // namespace

CMatrix windowed_single(cplx kappa, const GradedMesh& mesh, const QuadratureTables& tables, double delta) {
  if (!(kappa.imag() > 0.0) || !(kappa.real() > 0.0))
    throw std::domain_error("windowed_single: kappa needs positive real and imaginary parts");
  const KernelMask mask{true, false, false, false, false, false};
  return windowed_assemble(
      mesh, tables, delta,
      [&](const CurvePoint& a, const CurvePoint& b, double lt) {
        const BesselAt bs = bessel_at(kappa, (a.x - b.x).norm());
        return kernel_set_with(kappa, bs, a, b, lt, 0.0, mask).M;
      },
      [&](const CurvePoint& a) { return kernel_set_diagonal(kappa, a, mask).M; });
}

CMatrix windowed_hyper_diff(cplx kappa, double kappa0, const GradedMesh& mesh, const QuadratureTables& tables,
                            double delta) {
  if (!(kappa.imag() > 0.0) || !(kappa.real() > 0.0) || !(kappa0 > 0.0))
    throw std::domain_error("windowed_hyper_diff: invalid wavenumbers");
  const KernelMask mask{false, false, false, false, false, true};
  auto diff = [](const SplitValue& x, const SplitValue& y) {
    return SplitValue{x.log_coeff - y.log_coeff, x.smooth - y.smooth};
  };
  return windowed_assemble(
      mesh, tables, delta,
      [&](const CurvePoint& a, const CurvePoint& b, double lt) {
        const double rho = (a.x - b.x).norm();
        const SplitValue x = kernel_set_with(kappa, bessel_at(kappa, rho), a, b, lt, 0.0, mask).L;
        const SplitValue y = kernel_set_with(kappa0, bessel_at(kappa0, rho), a, b, lt, 0.0, mask).L;
        return diff(x, y);
      },
      [&](const CurvePoint& a) { return diff(hyper_single_diagonal(kappa, a), hyper_single_diagonal(kappa0, a)); });
}

}  // namespace bie2d
