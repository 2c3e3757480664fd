#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>

namespace bie2d {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct QuadratureTables {
  int n = 0;
  double h = 0.0;
  Eigen::MatrixXd R;     // log weights, R(i,j) = R_j(t_i)
  Eigen::MatrixXd T;     // principal-value cotangent weights
  Eigen::MatrixXd Dmat;  // spectral differentiation on 2n nodes
};

QuadratureTables build_tables(int n);

cplx log_quadrature(const QuadratureTables& tables, const CVector& f, int t_index);
cplx pv_quadrature(const QuadratureTables& tables, const CVector& f, int t_index);

// Interpolant through values at the shifted nodes t_j = j pi/n + pi/(2n).
cplx trig_interp_eval(const CVector& values, double t);

// Spectral derivative of a periodic nodal vector; equals Dmat * v.
CVector differentiate(const CVector& v);

// Replaces A by A * Dmat.
void right_multiply_dmat(CMatrix& A);

enum class Symbol { S, N };

cplx symbol_value(Symbol kind, cplx kappa, int m);
CVector apply_multiplier(Symbol kind, cplx kappa, const CVector& values);
CVector apply_symbol(const std::function<cplx(int)>& sigma, const CVector& values);
CMatrix multiplier_matrix(Symbol kind, cplx kappa, int n);

}  // namespace bie2d
