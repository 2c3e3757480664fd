#pragma once

#include <complex>

namespace bie2d {

using cplx = std::complex<double>;

namespace specfun {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;

// J0, J1, Y0, Y1 at a positive real argument.  zy1p = x*Y1(x) + 2/pi, which
// is computed without cancellation for small x.
struct RealBessel {
  double j0, j1, y0, y1, zy1p;
  cplx h0() const { return {j0, y0}; }
  cplx h1() const { return {j1, y1}; }
};

RealBessel bessel_real(double x);

// Values for a complex argument with Re z >= 0, Im z >= 0.
// zh1m = (i/4) z H1(z) - 1/(2 pi).
struct ComplexBessel {
  cplx j0, j1, h0, h1, zh1m;
};

ComplexBessel bessel_complex(cplx z);

cplx bessel_j(int order, cplx z);
cplx hankel1(int order, double x);
cplx hankel1(int order, cplx z);

// (i/4) H0(k r); the Laplace kernel -log(r)/(2 pi) for k = 0.
cplx greens(cplx k, double r);

// J_m and Y_m for integer m >= 0 at real x > 0, used by the disk series.
void bessel_jy_integer(int mmax, double x, double* j, double* y);

}  // namespace specfun
}  // namespace bie2d
