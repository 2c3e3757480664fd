#include "bie2d/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bie2d {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double arc_length(const ArcMap& arc) {
  auto speed = [&](double u) { return arc(u).dx.norm(); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(speed, 0.0, 1.0, 20, 1e-14);
}

}  // namespace

Sigmoid sigmoid(double s, double a, double b, int p) {
  if (p < 2) throw std::invalid_argument("sigmoid: order must be at least 2");
  const double L = b - a;
  const double tol = 1e-13 * std::max(1.0, std::abs(b));
  if (s < a - tol || s > b + tol) throw std::out_of_range("sigmoid: parameter outside segment");
  const double c = 0.5 - 1.0 / p;
  const double xi = std::clamp((2.0 * s - a - b) / L, -1.0, 1.0);
  const double v = c * xi * xi * xi + xi / p + 0.5;
  const double dv = (3.0 * c * xi * xi + 1.0 / p) * (2.0 / L);
  const double ddv = 6.0 * c * xi * (2.0 / L) * (2.0 / L);
  const double A = std::pow(v, p), B = std::pow(1.0 - v, p), D = A + B;
  const double vv = v * (1.0 - v);
  const double g = A / D;
  const double dg = p * std::pow(vv, p - 1) / (D * D);
  const double dD = p * (std::pow(v, p - 1) - std::pow(1.0 - v, p - 1));
  const double ddg = p * std::pow(vv, p - 2) * ((p - 1) * (1.0 - 2.0 * v) * D - 2.0 * vv * dD) / (D * D * D);
  return {a + L * g, L * dg * dv, L * (ddg * dv * dv + dg * ddv)};
}

Curve::Curve(std::vector<ArcMap> arcs, bool graded) : arcs_(std::move(arcs)), graded_(graded) {
  if (arcs_.empty()) throw std::invalid_argument("Curve: no arcs");
  const int P = int(arcs_.size());
  for (int j = 0; j < P; ++j) {
    const Vec2 end = arcs_[j](1.0).x, start = arcs_[(j + 1) % P](0.0).x;
    if ((end - start).norm() > 1e-10 * std::max(1.0, end.norm()))
      throw std::invalid_argument("Curve: arcs do not join");
    lengths_.push_back(arc_length(arcs_[j]));
    if (!(lengths_.back() > 0.0)) throw std::invalid_argument("Curve: degenerate arc");
  }
  double total = 0.0;
  for (double l : lengths_) total += l;
  breaks_.assign(1, 0.0);
  double acc = 0.0;
  for (int j = 0; j < P; ++j) {
    acc += lengths_[j];
    breaks_.push_back(j + 1 == P ? two_pi : two_pi * acc / total);
  }
  for (int j = 0; j < P; ++j) {
    const Vec2 a = arcs_[(j + P - 1) % P](1.0).dx, b = arcs_[j](0.0).dx;
    const double turn = std::atan2(cross(a, b), a.dot(b));
    angles_.push_back(std::numbers::pi - turn);
  }
}

Curve Curve::smooth(ArcMap closed) {
  Curve c({std::move(closed)}, false);
  c.angles_ = {std::numbers::pi};
  return c;
}

std::vector<Corner> Curve::corners() const {
  std::vector<Corner> out;
  for (int j = 0; j < num_segments(); ++j)
    if (std::abs(angles_[j] - std::numbers::pi) > 1e-9) out.push_back({breaks_[j], angles_[j]});
  return out;
}

double Curve::perimeter() const {
  double total = 0.0;
  for (double l : lengths_) total += l;
  return total;
}

int Curve::segment_of(double s) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  int j = int(it - breaks_.begin()) - 1;
  return std::clamp(j, 0, num_segments() - 1);
}

double Curve::sigmoid_w(double s, int j, int p) const {
  if (j < 0 || j >= num_segments()) throw std::out_of_range("sigmoid_w: segment index");
  return sigmoid(s, breaks_[j], breaks_[j + 1], p).w;
}

CurvePoint Curve::from_arc(int j, double w, double dw, double ddw) const {
  const double L = breaks_[j + 1] - breaks_[j];
  const ArcPoint a = arcs_[j]((w - breaks_[j]) / L);
  const Vec2 X1 = a.dx / L, X2 = a.ddx / (L * L);
  CurvePoint cp;
  cp.x = a.x;
  cp.dx = X1 * dw;
  cp.ddx = X2 * dw * dw + X1 * ddw;
  cp.nu = Vec2(cp.dx.y(), -cp.dx.x());
  cp.jac = cp.dx.norm();
  return cp;
}

CurvePoint Curve::eval_ungraded(double s) const {
  s -= two_pi * std::floor(s / two_pi);
  const int j = segment_of(s);
  CurvePoint cp = from_arc(j, s, 1.0, 0.0);
  cp.t = s;
  return cp;
}

CurvePoint Curve::eval(double t, int p) const {
  if (!graded_) return eval_ungraded(t);
  double s = t - two_pi * std::floor(t / two_pi);
  const int j = segment_of(s);
  const Sigmoid sg = sigmoid(s, breaks_[j], breaks_[j + 1], p);
  CurvePoint cp = from_arc(j, sg.w, sg.dw, sg.ddw);
  cp.t = s;
  return cp;
}

Curve make_polygon(const std::vector<Vec2>& v) {
  if (v.size() < 3) throw std::invalid_argument("polygon: need at least three vertices");
  double area = 0.0;
  for (size_t i = 0; i < v.size(); ++i) area += cross(v[i], v[(i + 1) % v.size()]);
  if (!(area > 0.0)) throw std::invalid_argument("polygon: vertices must be counter-clockwise");
  std::vector<ArcMap> arcs;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    if ((b - a).norm() == 0.0) throw std::invalid_argument("polygon: repeated vertex");
    arcs.push_back([a, b](double u) { return ArcPoint{a + u * (b - a), b - a, Vec2::Zero()}; });
  }
  return Curve(std::move(arcs));
}

Curve make_square(double side) {
  if (!(side > 0.0)) throw std::invalid_argument("square: side must be positive");
  const double c = side / 2;
  return make_polygon({{-c, -c}, {c, -c}, {c, c}, {-c, c}});
}

Curve make_ushape(double side, double notch_width, double notch_depth) {
  if (!(side > 0.0) || !(notch_width > 0.0) || !(notch_width < side) || !(notch_depth > 0.0) ||
      !(notch_depth < side))
    throw std::invalid_argument("ushape: invalid dimensions");
  const double c = side / 2, w = notch_width / 2, bottom = c - notch_depth;
  return make_polygon({{-c, -c}, {c, -c}, {c, c}, {w, c}, {w, bottom}, {-w, bottom}, {-w, c}, {-c, c}});
}

Curve make_lq_ball(int q, double radius) {
  if (q < 2 || q % 2 != 0 || !(radius > 0.0)) throw std::invalid_argument("lq_ball: q must be even >= 2, radius > 0");
  const double quarter = std::numbers::pi / 2;
  std::vector<ArcMap> arcs;
  for (int j = 0; j < 4; ++j) {
    const double theta0 = -3.0 * std::numbers::pi / 4 + j * quarter;
    arcs.push_back([q, radius, theta0, quarter](double u) {
      const double th = theta0 + u * quarter;
      const double c = std::cos(th), s = std::sin(th);
      const double ac = std::abs(c), as = std::abs(s), m = std::max(ac, as);
      const double rc = ac / m, rs = as / m;
      const double Ft = std::pow(rc, q) + std::pow(rs, q);
      const double r = radius / (m * std::pow(Ft, 1.0 / q));
      const double as2 = std::pow(rs, q - 2), ac2 = std::pow(rc, q - 2);
      const double fp = q * c * s * (as2 - ac2) / (m * m * Ft);
      double fpp = q * (c * c - s * s) * (as2 - ac2) / (m * m);
      if (q > 2) fpp += double(q) * (q - 2) * c * c * s * s * (std::pow(rs, q - 4) + std::pow(rc, q - 4)) / (m * m * m * m);
      fpp /= Ft;
      const double g1 = -fp / q;
      const double g2 = -(fpp - fp * fp) / q;
      const double r1 = r * g1, r2 = r * (g2 + g1 * g1);
      const Vec2 e(c, s), ep(-s, c);
      ArcPoint a;
      a.x = r * e;
      a.dx = quarter * (r1 * e + r * ep);
      a.ddx = quarter * quarter * (r2 * e + 2.0 * r1 * ep - r * e);
      return a;
    });
  }
  return Curve(std::move(arcs));
}

Curve make_circle(double radius, Vec2 center) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
  return Curve::smooth([radius, center](double u) {
    const double th = two_pi * u;
    const Vec2 e(std::cos(th), std::sin(th)), ep(-std::sin(th), std::cos(th));
    return ArcPoint{center + radius * e, two_pi * radius * ep, -two_pi * two_pi * radius * e};
  });
}

Curve make_ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ellipse: semi-axes must be positive");
  return Curve::smooth([a, b](double u) {
    const double th = two_pi * u, c = std::cos(th), s = std::sin(th);
    return ArcPoint{Vec2(a * c, b * s), two_pi * Vec2(-a * s, b * c), -two_pi * two_pi * Vec2(a * c, b * s)};
  });
}

Curve builtin_geometry(const GeometryParams& g) {
  if (g.kind == "square") return make_square(g.side);
  if (g.kind == "ushape") return make_ushape(g.side, g.notch_width, g.notch_depth);
  if (g.kind == "lq_ball") return make_lq_ball(g.q, g.radius);
  if (g.kind == "polygon") return make_polygon(g.vertices);
  if (g.kind == "circle") return make_circle(g.radius);
  if (g.kind == "ellipse") return make_ellipse(g.semi_a, g.semi_b);
  throw std::invalid_argument("unknown geometry kind: " + g.kind);
}

GradedMesh::GradedMesh(Curve curve, int n, int p) : curve_(std::move(curve)), n_(n), p_(p) {
  if (n < 8) throw std::invalid_argument("mesh: n must be at least 8");
  if (p < 2) throw std::invalid_argument("mesh: order must be at least 2");
  h_ = std::numbers::pi / n;
  nodes_.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const double t = i * h_ + h_ / 2;
    for (double T : curve_.breakpoints())
      if (curve_.graded() && std::abs(t - T) < 1e-12) throw std::logic_error("mesh: node collides with a breakpoint");
    nodes_.push_back(curve_.eval(t, p));
    if (!(nodes_.back().jac > 0.0)) throw std::logic_error("mesh: vanishing Jacobian at a node");
  }
}

GradedMesh build_mesh(const Curve& curve, int n, int p) { return GradedMesh(curve, n, p); }

}  // namespace bie2d
