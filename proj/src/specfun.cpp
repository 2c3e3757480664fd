#include "bie2d/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace bie2d::specfun {

namespace {

constexpr double two_over_pi = 2.0 / pi;
constexpr double series_radius = 2.0;
constexpr double miller_radius = 25.0;
constexpr cplx I{0.0, 1.0};

template <class T>
struct Quad {
  T j0, j1, y0, y1, zy1p;
};

template <class T>
Quad<T> ascending_series(T z) {
  const T q = -z * z / 4.0;
  const T half = z / 2.0;
  T t0 = 1.0;   // q^k / (k!)^2
  T t1 = half;  // (z/2) q^k / (k! (k+1)!)
  T j0 = t0, j1 = t1;
  T s0 = 0.0;                         // sum H_k q^k / (k!)^2
  T s1 = (-2.0 * euler_gamma + 1.0) * t1;  // sum (psi(k+1)+psi(k+2)) t1_k
  double hk = 0.0;
  for (int k = 1; k < 40; ++k) {
    t0 *= q / double(k * k);
    t1 *= q / double(k * (k + 1));
    hk += 1.0 / k;
    const double hk1 = hk + 1.0 / (k + 1);
    j0 += t0;
    j1 += t1;
    s0 += hk * t0;
    s1 += (hk + hk1 - 2.0 * euler_gamma) * t1;
    if (std::abs(t0) < 1e-18 * std::abs(j0) && std::abs(t1) < 1e-18 * std::abs(j1) + 1e-300)
      break;
  }
  const T lg = std::log(half);
  Quad<T> out;
  out.j0 = j0;
  out.j1 = j1;
  out.y0 = two_over_pi * ((lg + euler_gamma) * j0 - s0);
  out.zy1p = two_over_pi * z * lg * j1 - z * s1 / pi;
  out.y1 = (out.zy1p - two_over_pi) / z;
  return out;
}

// Backward recurrence normalised by 1 = J0 + 2 sum J_2k (real) or by the
// generating function e^{+-iz} (complex).  Y0, Y1 follow from Neumann series.
template <class T>
Quad<T> miller(T z) {
  const double az = std::abs(z);
  int nstart = 2 * int((az + 36.0) / 2.0);
  const T inv = 1.0 / z;
  T fp1 = 0.0, f = 1e-30;
  T jsum_even = 0.0;  // sum_{k>=1} (-1)^k f_{2k} / k
  T jsum_odd = 0.0;   // sum_{k>=1} (-1)^k (1+2k) f_{2k+1} / (k(k+1))
  T norm = 0.0;
  T f1 = 0.0;
  cplx phase = 1.0;  // (+-i)^n
  double s = 1.0;
  if constexpr (!std::is_same_v<T, double>) {
    s = (std::imag(z) >= 0.0) ? -1.0 : 1.0;
  }
  // phase for index nstart: (s i)^nstart
  cplx unit{0.0, s};
  {
    cplx p = 1.0;
    for (int m = 0; m < (nstart % 4); ++m) p *= unit;
    phase = p;
  }
  for (int n = nstart; n >= 1; --n) {
    // at entry f = f_n, fp1 = f_{n+1}
    if (n % 2 == 0) {
      const int k = n / 2;
      jsum_even += ((k % 2) ? -1.0 : 1.0) * f / double(k);
    } else if (n >= 3) {
      const int k = (n - 1) / 2;
      jsum_odd += ((k % 2) ? -1.0 : 1.0) * double(1 + 2 * k) * f / double(k * (k + 1));
    }
    if constexpr (std::is_same_v<T, double>) {
      if (n % 2 == 0) norm += 2.0 * f;
    } else {
      norm += 2.0 * phase * f;
    }
    if (n == 1) f1 = f;
    const T fm1 = 2.0 * double(n) * inv * f - fp1;
    fp1 = f;
    f = fm1;
    if constexpr (!std::is_same_v<T, double>) phase /= unit;
    if (std::abs(f) > 1e250) {
      const double sc = 1e-250;
      f *= sc; fp1 *= sc; jsum_even *= sc; jsum_odd *= sc; norm *= sc; f1 *= sc;
    }
  }
  norm += f;
  T target;
  if constexpr (std::is_same_v<T, double>) {
    target = 1.0;
  } else {
    target = std::exp(s * I * z);
  }
  const T scale = target / norm;
  Quad<T> out;
  out.j0 = f * scale;
  out.j1 = f1 * scale;
  const T lg = std::log(z / 2.0);
  out.y0 = two_over_pi * (lg + euler_gamma) * out.j0 - 2.0 * two_over_pi * jsum_even * scale;
  out.y1 = -two_over_pi * inv * out.j0 + two_over_pi * (lg - (1.0 - euler_gamma)) * out.j1 -
           two_over_pi * jsum_odd * scale;
  out.zy1p = z * out.y1 + two_over_pi;
  return out;
}

// Hankel expansion sum_k (+-i)^k a_k(nu) / z^k.
cplx hankel_sum(int nu, cplx z, double sgn) {
  const double mu = 4.0 * nu * nu;
  cplx term = 1.0, sum = 1.0;
  const cplx w = cplx(0.0, sgn) / z;
  double prev = 1e300;
  for (int k = 1; k < 200; ++k) {
    term *= w * (mu - double((2 * k - 1) * (2 * k - 1))) / (8.0 * k);
    const double a = std::abs(term);
    if (a > prev) break;
    sum += term;
    prev = a;
    if (a < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

cplx hankel1_asym(int nu, cplx z) {
  const cplx omega = z - (0.5 * nu + 0.25) * pi;
  return std::sqrt(two_over_pi / z) * std::exp(I * omega) * hankel_sum(nu, z, 1.0);
}

cplx hankel2_asym(int nu, cplx z) {
  const cplx omega = z - (0.5 * nu + 0.25) * pi;
  return std::sqrt(two_over_pi / z) * std::exp(-I * omega) * hankel_sum(nu, z, -1.0);
}

void check_finite(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("bessel: non-finite argument");
}

}  // namespace

RealBessel bessel_real(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_real: argument must be positive");
  RealBessel b;
  if (x <= series_radius) {
    const auto q = ascending_series<double>(x);
    b = {q.j0, q.j1, q.y0, q.y1, q.zy1p};
  } else if (x <= miller_radius) {
    const auto q = miller<double>(x);
    b = {q.j0, q.j1, q.y0, q.y1, q.zy1p};
  } else {
    const cplx h0 = hankel1_asym(0, x), h1 = hankel1_asym(1, x);
    b = {h0.real(), h1.real(), h0.imag(), h1.imag(), 0.0};
    b.zy1p = x * b.y1 + two_over_pi;
  }
  return b;
}

ComplexBessel bessel_complex(cplx z) {
  check_finite(z);
  if (z.real() < 0.0 || z.imag() < 0.0) throw std::domain_error("bessel_complex: argument outside first quadrant");
  if (std::abs(z) == 0.0) throw std::domain_error("bessel_complex: zero argument");
  const double az = std::abs(z);
  ComplexBessel b;
  if (az <= series_radius) {
    const auto q = ascending_series<cplx>(z);
    b.j0 = q.j0;
    b.j1 = q.j1;
    b.h0 = q.j0 + I * q.y0;
    b.h1 = q.j1 + I * q.y1;
    b.zh1m = 0.25 * I * z * q.j1 - 0.25 * q.zy1p;
    return b;
  }
  const bool asym_h = az > miller_radius || (az > 12.0 && z.imag() > 2.0);
  if (az <= miller_radius) {
    const auto q = miller<cplx>(z);
    b.j0 = q.j0;
    b.j1 = q.j1;
    if (!asym_h) {
      b.h0 = q.j0 + I * q.y0;
      b.h1 = q.j1 + I * q.y1;
      b.zh1m = 0.25 * I * z * q.j1 - 0.25 * q.zy1p;
      return b;
    }
  }
  b.h0 = hankel1_asym(0, z);
  b.h1 = hankel1_asym(1, z);
  if (az > miller_radius) {
    b.j0 = 0.5 * (b.h0 + hankel2_asym(0, z));
    b.j1 = 0.5 * (b.h1 + hankel2_asym(1, z));
  }
  b.zh1m = 0.25 * I * z * b.h1 - 0.5 / pi;
  return b;
}

cplx bessel_j(int order, cplx z) {
  if (order != 0 && order != 1) throw std::domain_error("bessel_j: order must be 0 or 1");
  check_finite(z);
  if (std::abs(z) > 1e4) throw std::domain_error("bessel_j: argument outside accuracy envelope");
  if (std::abs(z) == 0.0) return order == 0 ? 1.0 : 0.0;
  double sign = 1.0;
  if (z.real() < 0.0) {
    z = -z;
    if (order == 1) sign = -1.0;
  }
  bool conj = false;
  if (z.imag() < 0.0) {
    z = std::conj(z);
    conj = true;
  }
  cplx v;
  if (z.imag() == 0.0) {
    const RealBessel b = bessel_real(z.real());
    v = order == 0 ? b.j0 : b.j1;
  } else {
    const ComplexBessel b = bessel_complex(z);
    v = order == 0 ? b.j0 : b.j1;
  }
  v *= sign;
  return conj ? std::conj(v) : v;
}

cplx hankel1(int order, double x) {
  if (order != 0 && order != 1) throw std::domain_error("hankel1: order must be 0 or 1");
  if (!(x > 0.0)) throw std::domain_error("hankel1: argument must be positive");
  const RealBessel b = bessel_real(x);
  return order == 0 ? b.h0() : b.h1();
}

cplx hankel1(int order, cplx z) {
  if (order != 0 && order != 1) throw std::domain_error("hankel1: order must be 0 or 1");
  if (z.imag() == 0.0) return hankel1(order, z.real());
  const ComplexBessel b = bessel_complex(z);
  return order == 0 ? b.h0 : b.h1;
}

cplx greens(cplx k, double r) {
  if (!(r > 0.0)) throw std::domain_error("greens: distance must be positive");
  if (k == cplx(0.0)) return -std::log(r) / (2.0 * pi);
  return 0.25 * I * hankel1(0, k * r);
}

void bessel_jy_integer(int mmax, double x, double* j, double* y) {
  if (!(x > 0.0) || mmax < 0) throw std::domain_error("bessel_jy_integer: invalid arguments");
  const int nstart = 2 * ((std::max(mmax, int(x)) + int(x) + 60) / 2);
  std::vector<double> f(nstart + 2, 0.0);
  f[nstart] = 1.0;
  for (int n = nstart; n >= 1; --n) {
    f[n - 1] = 2.0 * n / x * f[n] - f[n + 1];
    if (std::abs(f[n - 1]) > 1e200) {
      for (int m = n - 1; m <= nstart; ++m) f[m] *= 1e-200;
    }
  }
  double norm = f[0];
  for (int n = 2; n <= nstart; n += 2) norm += 2.0 * f[n];
  for (int m = 0; m <= mmax; ++m) j[m] = f[m] / norm;
  const RealBessel b = bessel_real(x);
  j[0] = b.j0;
  if (mmax >= 1) j[1] = b.j1;
  y[0] = b.y0;
  if (mmax >= 1) y[1] = b.y1;
  for (int m = 1; m < mmax; ++m) y[m + 1] = 2.0 * m / x * y[m] - y[m - 1];
}

}  // namespace bie2d::specfun
