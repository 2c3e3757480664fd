#pragma once

#include "bie2d/formulations.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bie2d {

// One numerical self-check: the measured value must not exceed the tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double value, double tolerance);

// Relative residual of S N + I/4 - K^2 on bandlimited vectors, unit circle, n = 32.
Check check_calderon();
// Exterior representation of the incident traces at 20 points around the square.
Check check_null_field();
// Compensated Laplace double layer applied to 1 on the graded square, compared with -1/2.
Check check_laplace_constant();
// Log and principal-value rules on trigonometric monomials, n <= 32.
Check check_quadrature_exactness();
// Largest violation of "real roots outside [-1/2, 1/2]" for the cubic symbol,
// over rho in {0.1, 0.5, 2, 10, 100}; zero when the lemma holds.
Check check_cubic_roots();
// |x|^{1/2} e^{-i k1 |x|} u^1(x) at |x| = 1e6 against the far field of a
// solved square configuration.
Check check_far_field_constant();
// Nystrom far field on the radius-2 disk (k1 = 1, k2 = 4, n = 128) against
// the disk series, one check per formulation.
std::vector<Check> check_circle_oracle(RhoMode mode);

// Everything above; one line per check is written to log.
std::vector<Check> run_verify_suite(std::ostream& log);

std::string format_check(const Check& c);

}  // namespace bie2d
