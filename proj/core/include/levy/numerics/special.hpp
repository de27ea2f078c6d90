#pragma once

#include <cmath>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "levy/error.hpp"

namespace levy::special {

// Upper incomplete gamma  Gamma(a, x) = \int_x^\infty u^{a-1} e^{-u} du  for
// x > 0 and any real a > -3 (including non-positive integers), via
// Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a.
inline double upper_gamma(double a, double x) {
  if (!(x > 0.0)) throw Error("upper_gamma: x must be positive");
  if (a > 0.0) return boost::math::tgamma(a, x);
  if (a == 0.0) return boost::math::expint(1, x);
  if (a <= -3.0) throw Error("upper_gamma: a must exceed -3");
  return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

// Lower incomplete gamma for a > 0.
inline double lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw Error("lower_gamma: a must be positive");
  if (x <= 0.0) return 0.0;
  return boost::math::tgamma_lower(a, x);
}

}  // namespace levy::special
