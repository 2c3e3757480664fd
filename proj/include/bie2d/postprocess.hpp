#pragma once

#include "bie2d/formulations.hpp"

#include <vector>

namespace bie2d {

struct FarField {
  std::vector<double> theta;  // direction angles
  CVector values;
};

// theta_j = 2 pi j / count
std::vector<double> far_field_angles(int count);

// u_inf(xhat) = e^{i pi/4}/sqrt(8 pi k1) int [-gamma_N^w - i k1 (xhat.nu) gamma_D] e^{-i k1 xhat.x} dtau
FarField far_field(const TraceVector& traces, const TransmissionProblem& problem, const GradedMesh& mesh,
                   int num_dirs = 1024);
FarField far_field_at(const TraceVector& traces, const TransmissionProblem& problem, const GradedMesh& mesh,
                      const std::vector<double>& theta);

enum class Region { Exterior, Interior };

// Scattered field u^1 (exterior) or transmitted field u^2 (interior) from the
// representation formulas.  Points must lie in the stated region and at least
// five node spacings away from the boundary.
CVector near_field(const TraceVector& traces, const TransmissionProblem& problem, const GradedMesh& mesh,
                   const std::vector<Vec2>& points, Region region);

// Winding-number test against the polygon through the mesh nodes.
bool inside(const GradedMesh& mesh, const Vec2& z);

double max_far_error(const FarField& calc, const FarField& ref);

// Separation-of-variables solution for a disk of the given radius centred at
// the origin; modes |m| <= k1 a + extra_modes.
struct MieSolution {
  double radius = 1.0;
  int mmax = 0;
  std::vector<cplx> a, b;  // index m + mmax
  TransmissionProblem problem;

  cplx far(double theta) const;
  cplx scattered(const Vec2& z) const;
  cplx transmitted(const Vec2& z) const;
};

MieSolution mie_solve(double radius, const TransmissionProblem& problem, int extra_modes = 40);
FarField mie_reference(double radius, const TransmissionProblem& problem, const std::vector<double>& theta,
                       int extra_modes = 40);

}  // namespace bie2d
