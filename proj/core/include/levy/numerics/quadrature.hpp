#pragma once

// Adaptive Gauss-Kronrod integration for real and complex integrands.
//
// The node tables come from Boost.Math; the adaptive driver lives here so that
// complex-valued integrands, explicit breakpoints and convergence diagnostics
// share one code path.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levy/error.hpp"

namespace levy::quad {

struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-7;
  std::size_t max_intervals = 4000;
};

template <typename T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

struct Rule {
  std::vector<double> x;   // kronrod abscissae on [0,1], x[0] = 0
  std::vector<double> wk;  // kronrod weights
  std::vector<double> wg;  // gauss weights aligned with x (zero where node is kronrod-only)
};

inline const Rule& k21() {
  static const Rule rule = [] {
    using K = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    Rule r;
    const auto& xa = K::abscissa();
    const auto& wa = K::weights();
    const auto& wga = G::weights();
    r.x.assign(xa.begin(), xa.end());
    r.wk.assign(wa.begin(), wa.end());
    r.wg.assign(r.x.size(), 0.0);
    // Gauss-10 nodes are the odd-indexed kronrod nodes (no node at 0).
    const auto& xga = G::abscissa();
    for (std::size_t i = 0; i < wga.size(); ++i) {
      if (std::abs(r.x[2 * i + 1] - xga[i]) > 1e-14) throw Error("gauss-kronrod node tables misaligned");
      r.wg[2 * i + 1] = wga[i];
    }
    return r;
  }();
  return rule;
}

template <typename T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename T, typename F>
Segment<T> apply_rule(F& f, double a, double b, std::size_t& evals) {
  const Rule& r = k21();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T sk = fc * r.wk[0];
  T sg = T{};
  for (std::size_t i = 1; i < r.x.size(); ++i) {
    const double dx = h * r.x[i];
    T s = f(c - dx) + f(c + dx);
    sk += s * r.wk[i];
    if (r.wg[i] != 0.0) sg += s * r.wg[i];
  }
  evals += 2 * r.x.size() - 1;
  T value = sk * h;
  double err = magnitude((sk - sg) * h);
  return {a, b, value, err};
}

}  // namespace detail

// Adaptive GK21 on [a,b] with optional interior breakpoints. Never throws;
// inspect Result::converged.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, const Tolerance& tol = {},
                        std::span<const double> breakpoints = {}) {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Segment<T>> heap;
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto s = detail::apply_rule<T>(f, cuts[i], cuts[i + 1], out.evaluations);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  auto target = [&] { return std::max(tol.abs, tol.rel * detail::magnitude(total)); };
  while (total_err > target() && heap.size() < tol.max_intervals) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
    heap.pop();
    auto left = detail::apply_rule<T>(f, worst.a, mid, out.evaluations);
    auto right = detail::apply_rule<T>(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute from the leaves to shed accumulated round-off in the running sums.
  T sum{};
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum * sign;
  out.error = err;
  out.converged = err <= std::max(tol.abs, tol.rel * detail::magnitude(sum)) * 1.0000001;
  return out;
}

// Same as integrate_adaptive but throws QuadratureError on non-convergence.
template <typename F>
auto integrate(F&& f, double a, double b, const Tolerance& tol = {},
               std::span<const double> breakpoints = {}, const char* what = "integral") {
  auto r = integrate_adaptive(std::forward<F>(f), a, b, tol, breakpoints);
  if (!r.converged)
    throw QuadratureError(std::string(what) + ": adaptive Gauss-Kronrod did not converge", r.error,
                          std::max(tol.abs, tol.rel * detail::magnitude(r.value)));
  return r;
}

// Integral over [a, inf) through the map x = a + s t/(1-t). `scale` sets where
// the bulk of the mass sits.
template <typename F>
auto integrate_to_infinity(F&& f, double a, double scale, const Tolerance& tol = {},
                           const char* what = "semi-infinite integral") {
  auto g = [&](double t) {
    using T = std::decay_t<decltype(f(a))>;
    if (t >= 1.0) return T{};
    const double u = 1.0 - t;
    const double x = a + scale * t / u;
    return f(x) * (scale / (u * u));
  };
  return integrate(g, 0.0, 1.0, tol, {}, what);
}

// Integrand with an integrable endpoint singularity at a (e.g. x^{-0.9}).
// Real-valued only; split complex integrands into parts.
template <typename F>
Result<double> integrate_singular(F&& f, double a, double b, double rel_tol = 1e-10,
                                  const char* what = "endpoint-singular integral") {
  Result<double> out;
  if (a == b) return out;
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  auto g = [&](double x, double xc) {
    ++out.evaluations;
    // xc is the distance to the nearest endpoint; use it to keep precision at a.
    const double xx = (xc < 0 && x < 0.5 * (a + b)) ? a - xc : x;
    const double v = f(xx);
    // Points within 1e-100 of an endpoint can overflow a weighted singular
    // integrand (0 * inf); their contribution is below any requested tolerance.
    if (!std::isfinite(v) && std::abs(xc) < 1e-100 * std::max(1.0, b - a)) return 0.0;
    return v;
  };
  out.value = ts.integrate(g, a, b, rel_tol, &err, &l1, &levels);
  // Boost reports an absolute error estimate; l1 is the integral of |f|.
  out.error = err;
  const double rel_err = l1 > 0.0 ? err / l1 : err;
  out.converged = std::isfinite(out.value) && rel_err <= std::max(1e3 * rel_tol, 1e-9);
  if (!out.converged) throw QuadratureError(std::string(what) + ": tanh-sinh did not converge", rel_err, rel_tol);
  return out;
}

}  // namespace levy::quad
