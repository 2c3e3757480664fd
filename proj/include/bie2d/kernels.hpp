#pragma once

#include "bie2d/geometry.hpp"
#include "bie2d/specfun.hpp"

#include <cmath>
#include <utility>

namespace bie2d {

// kernel = log_coeff * ln(4 sin^2((t - tau)/2)) + smooth
struct SplitValue {
  cplx log_coeff{0.0}, smooth{0.0};
  cplx value(double log_term) const { return log_coeff * log_term + smooth; }
};

// ln(4 sin^2((t - tau)/2))
inline double log_term(double t, double tau) { return 2.0 * std::log(2.0 * std::abs(std::sin(0.5 * (t - tau)))); }

// Splits of every kernel at one off-diagonal pair, sharing one Bessel
// evaluation.  a is the target point x(t), b the source x(tau).
//   M  : single layer
//   H  : double layer, nu(tau) . grad_y G |x'(tau)| weighting absorbed in nu
//   HT : adjoint double layer with nu(t)
//   Q  : k^2 (x'(t).x'(tau)) M
//   D  : d/dt [ (1/4pi) ln sin^2((t-tau)/2) + M ]
//   L  : kernel of N_k^w - N_0^w, -nu(t)^T Hess(G_k - G_0) nu(tau)
// H0 is the Laplace double-layer kernel (1/2pi) nu(tau).r/|r|^2.
struct KernelSet {
  SplitValue M, H, HT, Q, D, L;
  double H0 = 0.0;
};

struct KernelMask {
  bool M = true, H = true, HT = true, Q = true, D = true, L = true;
};

// Bessel data shared by all kernels at one distance; zh1m = (i/4) z H1(z) - 1/(2 pi).
struct BesselAt {
  cplx j0, j1, h0, h1, zh1m;
};

BesselAt bessel_at(double k, double rho);
BesselAt bessel_at(cplx k, double rho);

// Same as kernel_set with the Bessel values, ln(4 sin^2(u/2)) and cot(u/2)
// supplied by the caller, u = a.t - b.t.
template <class K>
KernelSet kernel_set_with(K k, const BesselAt& bs, const CurvePoint& a, const CurvePoint& b, double log_term,
                          double cot_half, KernelMask mask);

template <class K>
KernelSet kernel_set(K k, const CurvePoint& a, const CurvePoint& b, KernelMask mask = {});

template <class K>
KernelSet kernel_set_diagonal(K k, const CurvePoint& a, KernelMask mask = {});

// Hessian-difference split for a single wavenumber (kernel of N_k - N_0).
template <class K>
SplitValue hyper_single(K k, const CurvePoint& a, const CurvePoint& b);
template <class K>
SplitValue hyper_single_diagonal(K k, const CurvePoint& a);

SplitValue split_single(double k, const GradedMesh& mesh, double t, double tau);
std::pair<SplitValue, double> split_double(double k, const GradedMesh& mesh, double t, double tau);
SplitValue split_adjdouble(double k, const GradedMesh& mesh, double t, double tau);
std::pair<SplitValue, SplitValue> split_hyper_parts(double k, const GradedMesh& mesh, double t, double tau);
SplitValue split_hyper_diff(double k1, double k2, const GradedMesh& mesh, double t, double tau);

}  // namespace bie2d
