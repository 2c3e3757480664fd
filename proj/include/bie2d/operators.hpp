#pragma once

#include "bie2d/geometry.hpp"
#include "bie2d/kernels.hpp"
#include "bie2d/quadrature.hpp"

#include <string>

namespace bie2d {

// Nystrom matrix acting on nodal values of a (weighted) density.
struct DenseOperator {
  std::string label;
  CMatrix entries;

  int dim() const { return int(entries.rows()); }
  CVector apply(const CVector& x) const { return entries * x; }
};

// Which real-wavenumber operators one assembly sweep should produce.
struct OperatorRequest {
  bool S = false, K = false, KT = false, N = false, HD = false;
};

// Operators sharing one Bessel evaluation per node pair.  HD is N_k^w - N_0^w.
// Matrices that were not requested are left empty.
struct OperatorBundle {
  double k = 0.0;
  CMatrix S, K, KT, N, HD;
};

OperatorBundle assemble_bundle(double k, const GradedMesh& mesh, const QuadratureTables& tables, OperatorRequest req);

DenseOperator assemble_single(cplx k, const GradedMesh& mesh, const QuadratureTables& tables);
DenseOperator assemble_double(double k, const GradedMesh& mesh, const QuadratureTables& tables);
// Laplace part of the double layer as used inside assemble_double:
// off-diagonal h H_0, diagonal -sum_{j != i} h H_0(t_i, t_j) - 1/2.
DenseOperator assemble_laplace_double(const GradedMesh& mesh);

DenseOperator assemble_adjdouble_w(double k, const GradedMesh& mesh, const QuadratureTables& tables);
DenseOperator assemble_hyper_w(cplx k, const GradedMesh& mesh, const QuadratureTables& tables);
DenseOperator assemble_hyper_diff_w(double k1, double k2, const GradedMesh& mesh, const QuadratureTables& tables);

// Fourier-multiplier surrogates of S_kappa (on weighted densities) and
// N_kappa^w: circulant matrices of sigma(m) in the parameter variable.
DenseOperator assemble_ps(Symbol kind, cplx kappa, const GradedMesh& mesh, const QuadratureTables& tables);

// Smooth even cutoff in the parameter difference u: 1 for |u| <= delta/2,
// 0 for |u| >= delta (u taken modulo 2 pi).
double window(double u, double delta);

// Window width for a complex wavenumber: starts at pi/2 and shrinks until the
// longest chord inside the window times Im kappa is at most 8, never below 12 h.
double window_width(cplx kappa, const GradedMesh& mesh);

// Complex-kappa regularizers using the windowed splitting.
CMatrix windowed_single(cplx kappa, const GradedMesh& mesh, const QuadratureTables& tables, double delta);
// N_kappa^w - N_{kappa0}^w for complex kappa, real kappa0.
CMatrix windowed_hyper_diff(cplx kappa, double kappa0, const GradedMesh& mesh, const QuadratureTables& tables,
                            double delta);

}  // namespace bie2d
