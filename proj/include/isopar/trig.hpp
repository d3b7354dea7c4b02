#pragma once

#include <cmath>
#include <numbers>

// Trigonometric helpers for functions of pi*x with period 2 in x.
//
// The argument is reduced modulo 2 before any call into libm, and the
// reduction x - 2*nearbyint(x/2) is exact in binary floating point for the
// magnitudes that occur here. Consequences relied on throughout:
//   * sin_pi(k) == 0 exactly for integer k, cos_pi at half-integers == 0;
//   * sin_pi / cos_pi are bitwise 2-periodic and bitwise even/odd,
// which makes lattice identities and torus periodicity exact instead of
// merely accurate.
namespace isopar::trig {

inline constexpr double pi = std::numbers::pi_v<double>;

// x reduced to [-1, 1] with x - result an even integer (exact).
inline double reduce_mod2(double x) {
  return x - 2.0 * std::nearbyint(0.5 * x);
}

namespace detail {
// Splits x into nearest integer m and remainder f in [-0.5, 0.5]; returns
// the sign (-1)^m. Works on the already-reduced argument, so |m| <= 1.
inline double split_half(double x, double& f) {
  const double r = reduce_mod2(x);
  const double m = std::nearbyint(r);
  f = r - m;
  return (m == 0.0) ? 1.0 : -1.0;
}
}  // namespace detail

// sin(pi*x), exactly zero at integers, bitwise 2-periodic.
inline double sin_pi(double x) {
  double f;
  const double sign = detail::split_half(x, f);
  return f == 0.0 ? 0.0 : sign * std::sin(pi * f);
}

// cos(pi*x), exactly zero at half-integers, bitwise 2-periodic.
inline double cos_pi(double x) {
  double f;
  const double sign = detail::split_half(x, f);
  return (f == 0.5 || f == -0.5) ? 0.0 : sign * std::cos(pi * f);
}

// Per-coordinate factor f(x) = 2 + cos(pi*x) of the conformal factor and
// the ratios f^(m)(x)/f(x) used by the analytic jets.
inline double factor(double x) { return 2.0 + cos_pi(x); }

inline double factor_ratio1(double x) {  // f'/f
  return -pi * sin_pi(x) / factor(x);
}

inline double factor_ratio2(double x) {  // f''/f
  return -pi * pi * cos_pi(x) / factor(x);
}

inline double factor_ratio3(double x) {  // f'''/f
  return pi * pi * pi * sin_pi(x) / factor(x);
}

// w(x) = pi sin(pi x) / (2 + cos(pi x)) and derivatives; the single-variable
// building block of the closed-form Christoffel families.
inline double w(double x) {
  return pi * sin_pi(x) / factor(x);
}

inline double w_prime(double x) {
  const double c = cos_pi(x);
  const double d = 2.0 + c;
  return pi * pi * (2.0 * c + 1.0) / (d * d);
}

inline double w_second(double x) {
  const double c = cos_pi(x);
  const double s = sin_pi(x);
  const double d = 2.0 + c;
  return 2.0 * pi * pi * pi * s * (c - 1.0) / (d * d * d);
}

}  // namespace isopar::trig
