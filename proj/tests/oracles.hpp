#pragma once

#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <vector>

namespace oracle {

using mp_complex = boost::multiprecision::cpp_complex_50;
using mp_real = boost::multiprecision::cpp_bin_float_50;

struct SeriesJY {
  std::complex<double> j0, j1, y0, y1;
};

// Ascending series in 50-digit arithmetic.
inline SeriesJY bessel_series(std::complex<double> zd) {
  const mp_complex z(zd.real(), zd.imag());
  const mp_real gamma("0.57721566490153286060651209008240243104215933593992");
  const mp_real pi = boost::multiprecision::default_ops::get_constant_pi<mp_real::backend_type>();
  const mp_complex q = -z * z / 4;
  mp_complex t0 = 1, t1 = z / 2, j0 = t0, j1 = t1, s0 = 0;
  mp_complex s1 = t1 * (1 - 2 * gamma);
  mp_real hk = 0;
  for (int k = 1; k < 400; ++k) {
    t0 *= q / (k * k);
    t1 *= q / (k * (k + 1));
    hk += mp_real(1) / k;
    const mp_real hk1 = hk + mp_real(1) / (k + 1);
    j0 += t0;
    j1 += t1;
    s0 += hk * t0;
    s1 += (hk + hk1 - 2 * gamma) * t1;
    if (abs(t0) < 1e-45 * (abs(j0) + 1e-30) && abs(t1) < 1e-45 * (abs(j1) + 1e-30) && k > 10) break;
  }
  const mp_complex lg = log(z / 2);
  const mp_complex y0 = (2 / pi) * ((lg + gamma) * j0 - s0);
  const mp_complex y1 = -2 / (pi * z) + (2 / pi) * lg * j1 - s1 / pi;
  auto cv = [](const mp_complex& v) {
    return std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  };
  return {cv(j0), cv(j1), cv(y0), cv(y1)};
}

// J_m, H_m^(1) and their derivatives for 0 <= m <= mmax by upward recurrence in
// 50-digit arithmetic; adequate while mmax stays small compared with the
// digits available.
struct IntegerOrder {
  std::vector<std::complex<double>> j, h, dj, dh;
};

inline IntegerOrder bessel_integer_orders(int mmax, std::complex<double> zd) {
  const mp_complex z(zd.real(), zd.imag());
  const mp_real gamma("0.57721566490153286060651209008240243104215933593992");
  const mp_real pi = boost::multiprecision::default_ops::get_constant_pi<mp_real::backend_type>();
  const mp_complex q = -z * z / 4;
  mp_complex t0 = 1, t1 = z / 2, j0 = t0, j1 = t1, s0 = 0;
  mp_complex s1 = t1 * (1 - 2 * gamma);
  mp_real hk = 0;
  for (int k = 1; k < 600; ++k) {
    t0 *= q / (k * k);
    t1 *= q / (k * (k + 1));
    hk += mp_real(1) / k;
    const mp_real hk1 = hk + mp_real(1) / (k + 1);
    j0 += t0;
    j1 += t1;
    s0 += hk * t0;
    s1 += (hk + hk1 - 2 * gamma) * t1;
    if (abs(t0) < 1e-48 * (abs(j0) + 1e-30) && abs(t1) < 1e-48 * (abs(j1) + 1e-30) && k > 10) break;
  }
  const mp_complex lg = log(z / 2);
  std::vector<mp_complex> J(mmax + 2), Y(mmax + 2);
  J[0] = j0;
  J[1] = j1;
  Y[0] = (2 / pi) * ((lg + gamma) * j0 - s0);
  Y[1] = -2 / (pi * z) + (2 / pi) * lg * j1 - s1 / pi;
  for (int m = 1; m <= mmax; ++m) {
    J[m + 1] = mp_real(2 * m) / z * J[m] - J[m - 1];
    Y[m + 1] = mp_real(2 * m) / z * Y[m] - Y[m - 1];
  }
  auto cv = [](const mp_complex& v) {
    return std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  };
  const mp_complex i(0, 1);
  IntegerOrder out;
  for (int m = 0; m <= mmax; ++m) {
    const mp_complex H = J[m] + i * Y[m];
    const mp_complex Hp1 = J[m + 1] + i * Y[m + 1];
    out.j.push_back(cv(J[m]));
    out.h.push_back(cv(H));
    out.dj.push_back(cv(mp_real(m) / z * J[m] - J[m + 1]));
    out.dh.push_back(cv(mp_real(m) / z * H - Hp1));
  }
  return out;
}

}  // namespace oracle
