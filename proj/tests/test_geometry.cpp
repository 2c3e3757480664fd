#include "doctest.h"

#include "bie2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace bie2d;

namespace {
constexpr double pi = std::numbers::pi;

// Distance from a point to the boundary of the axis-aligned square [-c, c]^2.
double square_distance(const Vec2& x, double c) {
  const double dx = std::abs(x.x()) - c, dy = std::abs(x.y()) - c;
  if (dx <= 0 && dy <= 0) return std::min(-dx, -dy);
  return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

double simpson_length(const Curve& c, int j, int m) {
  const double a = c.breakpoints()[j], b = c.breakpoints()[j + 1];
  const double h = (b - a) / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * c.eval_ungraded(a + i * h).jac;
  }
  return s * h / 3.0;
}
}  // namespace

TEST_CASE("sigmoid endpoints and midpoint") {
  for (int p : {2, 3, 4, 6}) {
    CHECK(sigmoid(1.0, 1.0, 2.5, p).w == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sigmoid(2.5, 1.0, 2.5, p).w == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(sigmoid(1.75, 1.0, 2.5, p).w == doctest::Approx(1.75).epsilon(1e-15));
  }
  CHECK_THROWS_AS(sigmoid(0.9, 1.0, 2.5, 3), std::out_of_range);
  CHECK_THROWS_AS(sigmoid(1.2, 1.0, 2.5, 1), std::invalid_argument);
}

TEST_CASE("sigmoid derivatives match finite differences") {
  const double a = 0.3, b = 1.9, e = 1e-6;
  for (int p : {2, 3, 4}) {
    for (double s = a + 0.05; s < b - 0.05; s += 0.11) {
      const auto m = sigmoid(s - e, a, b, p), c = sigmoid(s, a, b, p), q = sigmoid(s + e, a, b, p);
      CHECK(std::abs((q.w - m.w) / (2 * e) - c.dw) < 1e-7);
      CHECK(std::abs((q.dw - m.dw) / (2 * e) - c.ddw) < 1e-6);
    }
  }
}

TEST_CASE("sigmoid is monotone and vanishes at the ends with order p-1") {
  const double a = 0.0, b = 1.0;
  for (int p : {3, 4}) {
    double prev = -1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double w = sigmoid(a + (b - a) * i / 2000.0, a, b, p).w;
      CHECK(w > prev);
      prev = w;
    }
    // finite-difference w' near the left end; log-log slope
    auto fd = [&](double eps) {
      const double d = eps * 1e-3;
      return (sigmoid(a + eps + d, a, b, p).w - sigmoid(a + eps - d, a, b, p).w) / (2 * d);
    };
    const double e1 = 1e-2, e2 = 1e-3;
    const double slope = std::log(fd(e1) / fd(e2)) / std::log(e1 / e2);
    CHECK(slope == doctest::Approx(p - 1).epsilon(0.02));
  }
}

TEST_CASE("square geometry") {
  const Curve c = make_square(4.0);
  const auto corners = c.corners();
  REQUIRE(corners.size() == 4);
  for (const auto& k : corners) CHECK(k.angle == doctest::Approx(pi / 2));
  CHECK(c.perimeter() == doctest::Approx(16.0).epsilon(1e-14));
  // mid-edge of the bottom side: outward normal (0,-1)
  const CurvePoint m = c.eval(pi / 4, 3);
  CHECK(m.jac > 0.0);
  CHECK((m.nu / m.nu.norm() - Vec2(0, -1)).norm() < 1e-14);
  CHECK((m.x - Vec2(0, -2)).norm() < 1e-14);
  for (double T : c.breakpoints()) CHECK(c.eval(T, 3).jac == 0.0);
  CHECK((c.eval(0.0, 3).x - c.eval(2 * pi, 3).x).norm() < 1e-14);
  CHECK((c.eval(-0.3, 3).x - c.eval(2 * pi - 0.3, 3).x).norm() < 1e-13);
}

TEST_CASE("ushape geometry") {
  const Curve c = make_ushape();
  const auto corners = c.corners();
  REQUIRE(corners.size() == 8);
  int convex = 0, reflex = 0;
  for (const auto& k : corners) {
    if (std::abs(k.angle - pi / 2) < 1e-12) ++convex;
    if (std::abs(k.angle - 3 * pi / 2) < 1e-12) ++reflex;
  }
  CHECK(convex == 6);
  CHECK(reflex == 2);
  const double sides[] = {4, 4, 1, 3, 2, 3, 1, 4};
  double total = 0;
  for (double s : sides) total += s;
  CHECK(c.perimeter() == doctest::Approx(total).epsilon(1e-14));
  const auto& T = c.breakpoints();
  for (int j = 0; j < 8; ++j) CHECK(std::abs((T[j + 1] - T[j]) / (2 * pi) - sides[j] / total) < 1e-10);
}

TEST_CASE("breakpoints follow arc length on a curved boundary") {
  const Curve c = make_lq_ball(8, 2.0);
  const auto& T = c.breakpoints();
  double ref[4], total = 0;
  for (int j = 0; j < 4; ++j) total += ref[j] = simpson_length(c, j, 20000);
  for (int j = 0; j < 4; ++j) CHECK(std::abs((T[j + 1] - T[j]) / (2 * pi) - ref[j] / total) < 1e-10);
}

TEST_CASE("lq_ball geometry") {
  const Curve c = make_lq_ball(512, 2.0);
  CHECK(c.corners().empty());
  CHECK(c.breakpoints().size() == 5);
  double dmax = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const CurvePoint p = c.eval_ungraded(2 * pi * (i + 0.5) / 20000);
    dmax = std::max(dmax, square_distance(p.x, 2.0));
  }
  for (double T : c.breakpoints()) dmax = std::max(dmax, square_distance(c.eval_ungraded(T).x, 2.0));
  CHECK(dmax > 1e-3);
  CHECK(dmax < 5e-3);
  // outward normal on the right side
  const CurvePoint m = c.eval(c.breakpoints()[1] + 0.5 * (c.breakpoints()[2] - c.breakpoints()[1]), 3);
  CHECK((m.nu / m.nu.norm() - Vec2(1, 0)).norm() < 1e-12);
}

TEST_CASE("graded derivatives are chain-rule consistent") {
  const Curve curves[] = {make_square(4.0), make_ushape(), make_lq_ball(16, 2.0), make_ellipse(2.0, 1.0)};
  for (const Curve& c : curves) {
    for (double t = 0.05; t < 2 * pi; t += 0.37) {
      const double e = 1e-6;
      const CurvePoint m = c.eval(t - e, 3), p = c.eval(t, 3), q = c.eval(t + e, 3);
      CHECK(((q.x - m.x) / (2 * e) - p.dx).norm() < 1e-7 * (1 + p.dx.norm()));
      CHECK(((q.dx - m.dx) / (2 * e) - p.ddx).norm() < 1e-5 * (1 + p.ddx.norm()));
      CHECK((p.nu - Vec2(p.dx.y(), -p.dx.x())).norm() == 0.0);
    }
  }
}

TEST_CASE("graded Jacobian vanishes polynomially at every corner") {
  const Curve c = make_ushape();
  for (int p : {3, 4}) {
    for (double T : c.breakpoints()) {
      for (double side : {1.0, -1.0}) {
        const double e1 = 1e-2, e2 = 1e-3;
        const double j1 = c.eval(T + side * e1, p).jac, j2 = c.eval(T + side * e2, p).jac;
        const double slope = std::log(j1 / j2) / std::log(e1 / e2);
        CHECK(slope >= p - 1 - 0.1);
      }
    }
  }
}

TEST_CASE("mesh construction") {
  const GradedMesh m = build_mesh(make_square(4.0), 8, 3);
  REQUIRE(m.size() == 16);
  int per_side[4] = {0, 0, 0, 0};
  for (const auto& nd : m.nodes()) {
    CHECK(nd.jac > 0.0);
    per_side[m.curve().segment_of(nd.t)]++;
  }
  for (int k : per_side) CHECK(k == 4);
  CHECK(m[0].t == doctest::Approx(pi / 16));
  CHECK_THROWS_AS(build_mesh(make_square(4.0), 4, 3), std::invalid_argument);
}

TEST_CASE("square mesh is invariant under the dihedral group") {
  const GradedMesh m = build_mesh(make_square(4.0), 32, 3);
  auto contains = [&](const Vec2& y) {
    return std::any_of(m.nodes().begin(), m.nodes().end(), [&](const CurvePoint& p) { return (p.x - y).norm() < 1e-12; });
  };
  for (const auto& nd : m.nodes()) {
    const Vec2 x = nd.x;
    CHECK(contains(Vec2(-x.y(), x.x())));
    CHECK(contains(Vec2(x.y(), x.x())));
    CHECK(contains(Vec2(-x.x(), x.y())));
  }
}

TEST_CASE("invalid geometry parameters") {
  CHECK_THROWS_AS(make_square(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_lq_ball(5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_polygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_ushape(4.0, 5.0, 1.0), std::invalid_argument);
  GeometryParams g;
  g.kind = "hexagon";
  CHECK_THROWS_AS(builtin_geometry(g), std::invalid_argument);
}
