#pragma once

#include "bie2d/quadrature.hpp"

#include <functional>
#include <vector>

namespace bie2d {

struct GmresResult {
  CVector solution;
  int iterations = 0;
  std::vector<double> residual_history;  // relative residual after each iteration
  bool converged = false;
};

using MatVec = std::function<CVector(const CVector&)>;

// Unrestarted GMRES, modified Gram-Schmidt Arnoldi, Givens rotations, x0 = 0.
// Stops once ||b - A x|| <= tol ||b||.  max_iter <= 0 means the system size.
GmresResult gmres(const MatVec& apply, const CVector& rhs, double tol, int max_iter = 0);

}  // namespace bie2d
