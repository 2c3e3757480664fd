#include "bie2d/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bie2d {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void check_traces(const TraceVector& t, const GradedMesh& mesh) {
  if (t.dirichlet.size() != mesh.size() || t.neumann_w.size() != mesh.size())
    throw std::invalid_argument("traces do not match the mesh");
}

cplx ipow(int m) {
  static const cplx p[4] = {1.0, I, -1.0, -I};
  return p[((m % 4) + 4) % 4];
}

}  // namespace

std::vector<double> far_field_angles(int count) {
  if (count <= 0) throw std::invalid_argument("far field: direction count must be positive");
  std::vector<double> th(count);
  for (int j = 0; j < count; ++j) th[j] = 2.0 * pi * j / count;
  return th;
}

FarField far_field(const TraceVector& traces, const TransmissionProblem& p, const GradedMesh& mesh, int num_dirs) {
  return far_field_at(traces, p, mesh, far_field_angles(num_dirs));
}

FarField far_field_at(const TraceVector& traces, const TransmissionProblem& p, const GradedMesh& mesh,
                      const std::vector<double>& theta) {
  check_traces(traces, mesh);
  const cplx c = std::exp(I * (pi / 4)) / std::sqrt(8.0 * pi * p.k1);
  FarField ff{theta, CVector(theta.size())};
  const int N = mesh.size();
#pragma omp parallel for
  for (int d = 0; d < int(theta.size()); ++d) {
    const Vec2 xh(std::cos(theta[d]), std::sin(theta[d]));
    cplx sum = 0.0;
    for (int j = 0; j < N; ++j) {
      const cplx dens = -traces.neumann_w(j) - I * p.k1 * xh.dot(mesh[j].nu) * traces.dirichlet(j);
      sum += dens * std::exp(-I * p.k1 * xh.dot(mesh[j].x));
    }
    ff.values(d) = c * mesh.h() * sum;
  }
  return ff;
}

bool inside(const GradedMesh& mesh, const Vec2& z) {
  double winding = 0.0;
  const int N = mesh.size();
  for (int j = 0; j < N; ++j) {
    const Vec2 a = mesh[j].x - z, b = mesh[(j + 1) % N].x - z;
    winding += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return std::abs(winding) > pi;
}

CVector near_field(const TraceVector& traces, const TransmissionProblem& p, const GradedMesh& mesh,
                   const std::vector<Vec2>& points, Region region) {
  check_traces(traces, mesh);
  const int N = mesh.size();
  double spacing = 0.0;
  for (int j = 0; j < N; ++j) spacing = std::max(spacing, (mesh[(j + 1) % N].x - mesh[j].x).norm());
  const double k = region == Region::Exterior ? p.k1 : p.k2;
  const double sign = region == Region::Exterior ? 1.0 : -1.0;
  // interior Neumann trace from the transmission condition rho gamma_N u^2 = gamma_N u^t
  const double nscale = region == Region::Exterior ? 1.0 : 1.0 / p.rho;
  CVector out(points.size());
  for (size_t q = 0; q < points.size(); ++q) {
    const Vec2& z = points[q];
    if (inside(mesh, z) != (region == Region::Interior))
      throw std::invalid_argument("near field: point outside the requested region");
    double dmin = 1e300;
    for (int j = 0; j < N; ++j) dmin = std::min(dmin, (z - mesh[j].x).norm());
    if (dmin < 5.0 * spacing) throw std::domain_error("near field: point too close to the boundary for the trapezoid rule");
    cplx sum = 0.0;
    for (int j = 0; j < N; ++j) {
      const Vec2 r = z - mesh[j].x;
      const double rho = r.norm();
      const auto bs = specfun::bessel_real(k * rho);
      const cplx G = 0.25 * I * bs.h0();
      const cplx dG = 0.25 * I * k * bs.h1() * mesh[j].nu.dot(r) / rho;
      sum += -G * nscale * traces.neumann_w(j) + dG * traces.dirichlet(j);
    }
    out(q) = sign * mesh.h() * sum;
  }
  return out;
}

double max_far_error(const FarField& calc, const FarField& ref) {
  if (calc.theta.size() != ref.theta.size() || calc.values.size() != ref.values.size())
    throw std::invalid_argument("far field error: direction sets differ");
  for (size_t j = 0; j < calc.theta.size(); ++j)
    if (std::abs(calc.theta[j] - ref.theta[j]) > 1e-12) throw std::invalid_argument("far field error: direction sets differ");
  return (calc.values - ref.values).cwiseAbs().maxCoeff();
}

MieSolution mie_solve(double radius, const TransmissionProblem& p, int extra_modes) {
  if (!(radius > 0.0)) throw std::invalid_argument("mie: radius must be positive");
  p.validate();
  MieSolution s;
  s.radius = radius;
  s.problem = p;
  s.mmax = int(std::ceil(p.k1 * radius)) + extra_modes;
  const int M = s.mmax;
  std::vector<double> j1(M + 2), y1(M + 2), j2(M + 2), y2(M + 2);
  const double x1 = p.k1 * radius, x2 = p.k2 * radius;
  specfun::bessel_jy_integer(M + 1, x1, j1.data(), y1.data());
  specfun::bessel_jy_integer(M + 1, x2, j2.data(), y2.data());
  const double theta_d = std::atan2(p.direction.y(), p.direction.x());
  s.a.assign(2 * M + 1, 0.0);
  s.b.assign(2 * M + 1, 0.0);
  for (int m = 0; m <= M; ++m) {
    auto deriv = [m](const std::vector<double>& f, double x) { return m == 0 ? -f[1] : f[m - 1] - m / x * f[m]; };
    const double J = j1[m], dJ = deriv(j1, x1);
    const cplx H(j1[m], y1[m]);
    const cplx dH(dJ, deriv(y1, x1));
    const double J2 = j2[m], dJ2 = deriv(j2, x2);
    // a H - b J2 = -c J ;  k1 a H' - rho k2 b J2' = -c k1 J'   (per unit c)
    const cplx det = H * (-p.rho * p.k2 * dJ2) - (-J2) * (p.k1 * dH);
    if (std::abs(det) == 0.0) throw std::logic_error("mie: singular mode system");
    const cplx ra = ((-J) * (-p.rho * p.k2 * dJ2) - (-J2) * (-p.k1 * dJ)) / det;
    const cplx rb = (H * (-p.k1 * dJ) - (p.k1 * dH) * (-J)) / det;
    for (int sgn : {1, -1}) {
      if (m == 0 && sgn < 0) continue;
      const int mm = sgn * m;
      const cplx c = ipow(mm) * std::exp(-I * double(mm) * theta_d);
      s.a[mm + M] = c * ra;
      s.b[mm + M] = c * rb;
    }
  }
  return s;
}

cplx MieSolution::far(double theta) const {
  cplx sum = 0.0;
  for (int m = -mmax; m <= mmax; ++m) sum += a[m + mmax] * ipow(-m) * std::exp(I * double(m) * theta);
  return std::sqrt(2.0 / (pi * problem.k1)) * std::exp(-I * (pi / 4)) * sum;
}

cplx MieSolution::scattered(const Vec2& z) const {
  const double r = z.norm();
  if (!(r > radius)) throw std::invalid_argument("mie: point not outside the disk");
  const double th = std::atan2(z.y(), z.x());
  std::vector<double> j(mmax + 2), y(mmax + 2);
  specfun::bessel_jy_integer(mmax + 1, problem.k1 * r, j.data(), y.data());
  cplx sum = 0.0;
  for (int m = -mmax; m <= mmax; ++m) {
    const int am = std::abs(m);
    const double sgn = (m < 0 && am % 2) ? -1.0 : 1.0;
    sum += a[m + mmax] * sgn * cplx(j[am], y[am]) * std::exp(I * double(m) * th);
  }
  return sum;
}

cplx MieSolution::transmitted(const Vec2& z) const {
  const double r = z.norm();
  if (!(r < radius)) throw std::invalid_argument("mie: point not inside the disk");
  const double th = std::atan2(z.y(), z.x());
  if (r == 0.0) return b[mmax];
  std::vector<double> j(mmax + 2), y(mmax + 2);
  specfun::bessel_jy_integer(mmax + 1, problem.k2 * r, j.data(), y.data());
  cplx sum = 0.0;
  for (int m = -mmax; m <= mmax; ++m) {
    const int am = std::abs(m);
    const double sgn = (m < 0 && am % 2) ? -1.0 : 1.0;
    sum += b[m + mmax] * sgn * j[am] * std::exp(I * double(m) * th);
  }
  return sum;
}

FarField mie_reference(double radius, const TransmissionProblem& problem, const std::vector<double>& theta,
                       int extra_modes) {
  const MieSolution s = mie_solve(radius, problem, extra_modes);
  FarField ff{theta, CVector(theta.size())};
  for (size_t d = 0; d < theta.size(); ++d) ff.values(d) = s.far(theta[d]);
  return ff;
}

}  // namespace bie2d
