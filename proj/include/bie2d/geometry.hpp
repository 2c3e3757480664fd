#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace bie2d {

using Vec2 = Eigen::Vector2d;

// Point and derivatives of one analytic arc with respect to its own
// parameter u in [0, 1].
struct ArcPoint {
  Vec2 x, dx, ddx;
};

using ArcMap = std::function<ArcPoint(double)>;

struct Corner {
  double param;
  double angle;  // interior angle, measured inside the scatterer
};

// Point on the (possibly graded) global parametrization.
// nu = (x2', -x1') is the outward normal scaled by |x'|.
struct CurvePoint {
  double t = 0.0;
  Vec2 x = Vec2::Zero(), dx = Vec2::Zero(), ddx = Vec2::Zero(), nu = Vec2::Zero();
  double jac = 0.0;
};

struct Sigmoid {
  double w, dw, ddw;
};

// Graded parameter on [a, b] with polynomial order p.
Sigmoid sigmoid(double s, double a, double b, int p);

class Curve {
 public:
  // Arcs in counter-clockwise order, each ending where the next begins.
  explicit Curve(std::vector<ArcMap> arcs, bool graded = true);

  // One closed analytic arc; no breakpoints, no grading.
  static Curve smooth(ArcMap closed);

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& arc_lengths() const { return lengths_; }
  std::vector<Corner> corners() const;
  double perimeter() const;
  bool graded() const { return graded_; }
  int num_segments() const { return int(arcs_.size()); }
  int segment_of(double s) const;

  CurvePoint eval_ungraded(double s) const;
  CurvePoint eval(double t, int p) const;

  // w(s) on segment j; throws std::out_of_range when s lies outside it.
  double sigmoid_w(double s, int j, int p) const;

 private:
  CurvePoint from_arc(int j, double w, double dw, double ddw) const;

  std::vector<ArcMap> arcs_;
  std::vector<double> breaks_;   // 0 = T_0 < T_1 < ... < T_P = 2 pi
  std::vector<double> lengths_;  // arc lengths
  std::vector<double> angles_;   // interior angle at T_j
  bool graded_ = true;
};

Curve make_polygon(const std::vector<Vec2>& vertices);
Curve make_square(double side);
Curve make_ushape(double side = 4.0, double notch_width = 2.0, double notch_depth = 3.0);
Curve make_lq_ball(int q, double radius);
Curve make_circle(double radius, Vec2 center = Vec2::Zero());
Curve make_ellipse(double a, double b);

struct GeometryParams {
  std::string kind = "square";
  double side = 4.0;
  double notch_width = 2.0;
  double notch_depth = 3.0;
  int q = 512;
  double radius = 2.0;
  double semi_a = 2.0, semi_b = 1.0;
  std::vector<Vec2> vertices;
};

Curve builtin_geometry(const GeometryParams& params);

class GradedMesh {
 public:
  GradedMesh(Curve curve, int n, int p);

  int n() const { return n_; }
  int size() const { return 2 * n_; }
  int p() const { return p_; }
  double h() const { return h_; }
  const Curve& curve() const { return curve_; }
  const CurvePoint& operator[](int i) const { return nodes_[i]; }
  const std::vector<CurvePoint>& nodes() const { return nodes_; }
  CurvePoint point(double t) const { return curve_.eval(t, p_); }

 private:
  Curve curve_;
  int n_, p_;
  double h_;
  std::vector<CurvePoint> nodes_;
};

GradedMesh build_mesh(const Curve& curve, int n, int p);

}  // namespace bie2d
