#pragma once

// Fourier-type tails  I = \int_a^\infty g(x) e^{i w x} dx  by summing integrals
// over half-periods and accelerating the (asymptotically alternating) partial
// sums with Wynn's epsilon algorithm.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "levy/error.hpp"
#include "levy/numerics/quadrature.hpp"

namespace levy::quad {

// Wynn epsilon extrapolation of a sequence of partial sums. Returns the last
// even-column estimate and a crude error from the two latest estimates.
template <typename T>
class WynnEpsilon {
 public:
  void push(T s) {
    std::vector<T> next;
    next.reserve(table_.size() + 1);
    next.push_back(s);
    for (std::size_t k = 0; k < table_.size(); ++k) {
      const T diff = next[k] - table_[k];
      const T prev = k == 0 ? T{} : table_[k - 1];
      if (detail::magnitude(diff) == 0.0) {
        // Converged exactly; truncate the table here.
        break;
      }
      next.push_back(prev + T{1.0} / diff);
    }
    table_ = std::move(next);
    // Even columns of the epsilon table hold the estimates.
    const std::size_t col = (table_.size() - 1) & ~std::size_t{1};
    const T est = table_[col];
    error_ = detail::magnitude(est - estimate_);
    estimate_ = est;
    ++count_;
  }

  T estimate() const { return estimate_; }
  double error() const { return count_ < 3 ? std::numeric_limits<double>::infinity() : error_; }

 private:
  std::vector<T> table_;
  T estimate_{};
  double error_ = std::numeric_limits<double>::infinity();
  std::size_t count_ = 0;
};

struct OscillatoryOptions {
  double abs = 1e-12;
  double rel = 1e-9;
  std::size_t max_panels = 4000;
  std::size_t min_panels = 8;
  // Panels are this many half-periods wide.
  std::size_t half_periods_per_panel = 1;
};

// \int_a^\infty g(x) e^{i w x} dx for w != 0; g smooth and eventually monotone.
template <typename G>
Result<std::complex<double>> fourier_tail(G&& g, double a, double w, const OscillatoryOptions& opt = {}) {
  using C = std::complex<double>;
  Result<C> out;
  if (w == 0.0) throw Error("fourier_tail: zero frequency");
  const double half = std::numbers::pi / std::abs(w) * static_cast<double>(opt.half_periods_per_panel);
  auto integrand = [&](double x) { return g(x) * std::exp(C(0.0, w * x)); };
  Tolerance inner{opt.abs * 1e-2, opt.rel * 1e-2, 200};

  // First panel runs up to the next multiple of the half period so every later
  // panel spans exactly one sign change of sin and cos.
  double left = a;
  double right = (std::floor(a / half) + 1.0) * half;
  C partial{};
  WynnEpsilon<C> wynn;
  double stall = 0.0;
  for (std::size_t n = 0; n < opt.max_panels; ++n) {
    auto piece = integrate_adaptive(integrand, left, right, inner);
    out.evaluations += piece.evaluations;
    out.error += piece.error;
    partial += piece.value;
    wynn.push(partial);
    left = right;
    right += half;
    const double term = detail::magnitude(piece.value);
    const double scale = std::max(detail::magnitude(partial), opt.abs);
    if (n + 1 >= opt.min_panels) {
      // Rapidly decaying g: plain partial sums already converged.
      if (term <= opt.abs * 1e-3 || term <= opt.rel * 1e-3 * scale) {
        out.value = partial;
        out.converged = true;
        return out;
      }
      const double tol = std::max(opt.abs, opt.rel * detail::magnitude(wynn.estimate()));
      if (wynn.error() <= tol) {
        if (++stall >= 2) {
          out.value = wynn.estimate();
          out.error += wynn.error();
          out.converged = true;
          return out;
        }
      } else {
        stall = 0;
      }
    }
  }
  out.value = wynn.estimate();
  out.error += wynn.error();
  out.converged = false;
  throw QuadratureError("fourier_tail: panel budget exhausted", out.error,
                        std::max(opt.abs, opt.rel * detail::magnitude(out.value)));
}

}  // namespace levy::quad
