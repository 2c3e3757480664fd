#include "bie2d/kernels.hpp"

#include <stdexcept>

namespace bie2d {

namespace {

constexpr double pi = specfun::pi;
constexpr double C = specfun::euler_gamma;
constexpr cplx I{0.0, 1.0};

void require_regular(const CurvePoint& a) {
  if (!(a.jac > 0.0)) throw std::domain_error("kernel: singular diagonal at a corner");
}

template <class K>
void require_wavenumber(K k) {
  if (!(std::real(k) > 0.0) || std::imag(k) < 0.0) throw std::invalid_argument("kernel: invalid wavenumber");
}

template <class K>
SplitValue hyper_from(K k, const BesselAt& bs, const CurvePoint& a, const CurvePoint& b, const Vec2& r, double rho,
                      double lt) {
  const double ar = a.nu.dot(r), br = b.nu.dot(r), ab = a.nu.dot(b.nu);
  const double rho2 = rho * rho;
  const cplx k2 = cplx(k) * cplx(k);
  const cplx full = 0.25 * I * k2 * bs.h0 * (ar * br / rho2) - bs.zh1m / rho2 * (2.0 * ar * br / rho2 - ab);
  SplitValue s;
  s.log_coeff = -cplx(k) / (4.0 * pi) * (bs.j1 / rho * ab + (cplx(k) * bs.j0 - 2.0 * bs.j1 / rho) * (ar * br / rho2));
  s.smooth = full - s.log_coeff * lt;
  return s;
}

bool is_diagonal(double t, double tau) { return std::abs(std::sin(0.5 * (t - tau))) < 1e-14; }

}  // namespace

BesselAt bessel_at(double k, double rho) {
  const double z = k * rho;
  const auto b = specfun::bessel_real(z);
  return {b.j0, b.j1, b.h0(), b.h1(), 0.25 * I * z * b.j1 - 0.25 * b.zy1p};
}

BesselAt bessel_at(cplx k, double rho) {
  if (k.imag() == 0.0) return bessel_at(k.real(), rho);
  const auto b = specfun::bessel_complex(k * rho);
  return {b.j0, b.j1, b.h0, b.h1, b.zh1m};
}

template <class K>
KernelSet kernel_set(K k, const CurvePoint& a, const CurvePoint& b, KernelMask mask) {
  const double rho = (a.x - b.x).norm();
  return kernel_set_with(k, bessel_at(k, rho), a, b, log_term(a.t, b.t), 1.0 / std::tan(0.5 * (a.t - b.t)), mask);
}

template <class K>
KernelSet kernel_set_with(K k, const BesselAt& bs, const CurvePoint& a, const CurvePoint& b, double lt,
                          double cot_half, KernelMask mask) {
  const Vec2 r = a.x - b.x;
  const double rho = r.norm();
  const cplx kc = k;
  KernelSet s;
  if (mask.M || mask.Q) {
    s.M.log_coeff = -bs.j0 / (4.0 * pi);
    s.M.smooth = 0.25 * I * bs.h0 - s.M.log_coeff * lt;
  }
  if (mask.H) {
    const double br = b.nu.dot(r);
    const cplx full = 0.25 * I * kc * br * bs.h1 / rho;
    s.H.log_coeff = -kc / (4.0 * pi) * br * bs.j1 / rho;
    s.H.smooth = full - s.H.log_coeff * lt;
    s.H0 = br / (2.0 * pi * rho * rho);
  }
  if (mask.HT) {
    const double ar = a.nu.dot(r);
    const cplx full = -0.25 * I * kc * ar * bs.h1 / rho;
    s.HT.log_coeff = kc / (4.0 * pi) * ar * bs.j1 / rho;
    s.HT.smooth = full - s.HT.log_coeff * lt;
  }
  if (mask.Q) {
    const cplx c = kc * kc * a.dx.dot(b.dx);
    s.Q.log_coeff = c * s.M.log_coeff;
    s.Q.smooth = c * s.M.smooth;
  }
  if (mask.D) {
    const double tr = a.dx.dot(r);
    const cplx full = -0.25 * I * kc * tr * bs.h1 / rho + cot_half / (4.0 * pi);
    s.D.log_coeff = kc / (4.0 * pi) * tr * bs.j1 / rho;
    s.D.smooth = full - s.D.log_coeff * lt;
  }
  if (mask.L) s.L = hyper_from(k, bs, a, b, r, rho, lt);
  return s;
}

template <class K>
KernelSet kernel_set_diagonal(K k, const CurvePoint& a, KernelMask mask) {
  KernelSet s;
  if (!(a.jac > 0.0)) {
    if (mask.M || mask.H || mask.HT || mask.Q || mask.D) require_regular(a);
    return s;
  }
  const cplx kc = k;
  const double j2 = a.jac * a.jac;
  const cplx m2 = 0.25 * I - C / (2.0 * pi) - std::log(kc * a.jac / 2.0) / (2.0 * pi);
  s.M = {-1.0 / (4.0 * pi), m2};
  const double curv = a.nu.dot(a.ddx) / (4.0 * pi * j2);
  s.H = {0.0, curv};
  s.H0 = curv;
  s.HT = {0.0, curv};
  s.Q = {-kc * kc * j2 / (4.0 * pi), kc * kc * j2 * m2};
  s.D = {0.0, -a.dx.dot(a.ddx) / (4.0 * pi * j2)};
  s.L = hyper_single_diagonal(k, a);
  return s;
}

template <class K>
SplitValue hyper_single(K k, const CurvePoint& a, const CurvePoint& b) {
  const Vec2 r = a.x - b.x;
  const double rho = r.norm();
  return hyper_from(k, bessel_at(k, rho), a, b, r, rho, log_term(a.t, b.t));
}

template <class K>
SplitValue hyper_single_diagonal(K k, const CurvePoint& a) {
  if (!(a.jac > 0.0)) return {};
  const cplx kc = k;
  const double j2 = a.jac * a.jac;
  SplitValue s;
  s.log_coeff = -kc * kc * j2 / (8.0 * pi);
  s.smooth = -kc * kc * (std::log(kc * a.jac / 2.0) / (4.0 * pi) - 0.125 * I + (2.0 * C - 1.0) / (8.0 * pi)) * j2;
  return s;
}

template KernelSet kernel_set<double>(double, const CurvePoint&, const CurvePoint&, KernelMask);
template KernelSet kernel_set<cplx>(cplx, const CurvePoint&, const CurvePoint&, KernelMask);
template KernelSet kernel_set_with<double>(double, const BesselAt&, const CurvePoint&, const CurvePoint&, double, double,
                                           KernelMask);
template KernelSet kernel_set_with<cplx>(cplx, const BesselAt&, const CurvePoint&, const CurvePoint&, double, double,
                                         KernelMask);
template KernelSet kernel_set_diagonal<double>(double, const CurvePoint&, KernelMask);
template KernelSet kernel_set_diagonal<cplx>(cplx, const CurvePoint&, KernelMask);
template SplitValue hyper_single<double>(double, const CurvePoint&, const CurvePoint&);
template SplitValue hyper_single<cplx>(cplx, const CurvePoint&, const CurvePoint&);
template SplitValue hyper_single_diagonal<double>(double, const CurvePoint&);
template SplitValue hyper_single_diagonal<cplx>(cplx, const CurvePoint&);

namespace {

KernelSet evaluate(double k, const GradedMesh& mesh, double t, double tau, KernelMask mask) {
  require_wavenumber(k);
  const CurvePoint a = mesh.point(t);
  if (is_diagonal(t, tau)) {
    require_regular(a);
    return kernel_set_diagonal(k, a, mask);
  }
  return kernel_set(k, a, mesh.point(tau), mask);
}

}  // namespace

SplitValue split_single(double k, const GradedMesh& mesh, double t, double tau) {
  return evaluate(k, mesh, t, tau, {true, false, false, false, false, false}).M;
}

std::pair<SplitValue, double> split_double(double k, const GradedMesh& mesh, double t, double tau) {
  const KernelSet s = evaluate(k, mesh, t, tau, {false, true, false, false, false, false});
  return {s.H, s.H0};
}

SplitValue split_adjdouble(double k, const GradedMesh& mesh, double t, double tau) {
  return evaluate(k, mesh, t, tau, {false, false, true, false, false, false}).HT;
}

std::pair<SplitValue, SplitValue> split_hyper_parts(double k, const GradedMesh& mesh, double t, double tau) {
  const KernelSet s = evaluate(k, mesh, t, tau, {false, false, false, true, true, false});
  return {s.Q, s.D};
}

SplitValue split_hyper_diff(double k1, double k2, const GradedMesh& mesh, double t, double tau) {
  require_wavenumber(k1);
  require_wavenumber(k2);
  if (k1 == k2) return {};
  const CurvePoint a = mesh.point(t);
  SplitValue s1, s2;
  if (is_diagonal(t, tau)) {
    s1 = hyper_single_diagonal(k1, a);
    s2 = hyper_single_diagonal(k2, a);
  } else {
    const CurvePoint b = mesh.point(tau);
    s1 = hyper_single(k1, a, b);
    s2 = hyper_single(k2, a, b);
  }
  return {s1.log_coeff - s2.log_coeff, s1.smooth - s2.smooth};
}

}  // namespace bie2d
