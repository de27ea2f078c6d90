#pragma once

// Numerical inversion of Laplace transforms F(s) = \int_0^\infty e^{-st} f(t) dt.
//
// Two fixed-precision schemes are provided:
//  * Euler summation of the Bromwich integral (Abate & Whitt). Needs F on a
//    vertical line Re s > 0, so it works for transforms that are only known on
//    the right half-plane.
//  * Gaver-Stehfest. Needs F on the positive real axis only; order is limited
//    by double precision (N <= 16).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "levy/error.hpp"

namespace levy::laplace {

using Complex = std::complex<double>;

// Nodes and weights so that f(t) ~ (1/t) sum_k Re( w_k F(s_k / t) ).
struct EulerRule {
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
  int order = 0;
};

inline EulerRule euler_rule(int m) {
  if (m < 2 || m > 24) throw Error("euler_rule: order must lie in [2, 24]");
  EulerRule r;
  r.order = m;
  const double base = static_cast<double>(m) * std::log(10.0) / 3.0;
  const double scale = std::pow(10.0, static_cast<double>(m) / 3.0);
  std::vector<double> eta(2 * m + 1, 0.0);
  eta[0] = 0.5;
  for (int k = 1; k <= m; ++k) eta[k] = (k % 2 == 0) ? 1.0 : -1.0;
  // eta_{2m-k} = (-1)^k 2^{-m} sum_{j=0}^{k} C(m, j)
  std::vector<double> binom(m + 1, 1.0);
  for (int j = 1; j <= m; ++j) binom[j] = binom[j - 1] * static_cast<double>(m - j + 1) / j;
  double partial = 0.0;
  for (int k = 0; k < m; ++k) {
    partial += binom[k];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    eta[2 * m - k] = sign * std::ldexp(partial, -m);
  }
  for (int k = 0; k <= 2 * m; ++k) {
    r.nodes.emplace_back(base, std::numbers::pi * k);
    r.weights.emplace_back(scale * eta[k], 0.0);
  }
  return r;
}

// Inverts F at t > 0 with an Euler rule.
template <typename F>
double euler_invert(F&& transform, double t, const EulerRule& rule) {
  if (!(t > 0.0)) throw Error("euler_invert: t must be positive");
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex s = rule.nodes[k] / t;
    acc += (rule.weights[k] * Complex(transform(s))).real();
  }
  return acc / t;
}

// Gaver-Stehfest weights V_k, k = 1..n (n even).
inline std::vector<double> stehfest_weights(int n) {
  if (n < 2 || n % 2 != 0 || n > 18) throw Error("stehfest_weights: order must be even and <= 18");
  const int half = n / 2;
  auto fact = [](int k) { return std::tgamma(static_cast<double>(k) + 1.0); };
  std::vector<double> v(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      s += std::pow(static_cast<double>(j), half) * fact(2 * j) /
           (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    v[k] = (((k + half) % 2 == 0) ? 1.0 : -1.0) * s;
  }
  return v;
}

template <typename F>
double stehfest_invert(F&& transform, double t, const std::vector<double>& weights) {
  if (!(t > 0.0)) throw Error("stehfest_invert: t must be positive");
  const double a = std::numbers::ln2 / t;
  double acc = 0.0;
  for (std::size_t k = 1; k < weights.size(); ++k) acc += weights[k] * transform(a * static_cast<double>(k));
  return acc * a;
}

}  // namespace levy::laplace
