#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace levy {

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
}  // namespace detail

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid process parameters or a triplet that violates the standing assumptions.
class SpecError : public Error {
 public:
  using Error::Error;
};

// An adaptive integration that did not reach its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_error, double requested)
      : Error(what + " (achieved error " + detail::sci(achieved_error) + ", requested " +
              detail::sci(requested) + ")"),
        achieved_error_(achieved_error),
        requested_(requested) {}

  double achieved_error() const noexcept { return achieved_error_; }
  double requested() const noexcept { return requested_; }

 private:
  double achieved_error_;
  double requested_;
};

// Argument outside the achievable range of a monotone map (e.g. h^{-1}).
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double lo, double hi)
      : Error(what + " (achievable range (" + detail::sci(lo) + ", " + detail::sci(hi) + "))"),
        lo_(lo),
        hi_(hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

// Two Laplace inversion orders disagree beyond the abort threshold.
class InversionError : public Error {
 public:
  InversionError(const std::string& what, double estimate_a, double estimate_b)
      : Error(what + " (estimates " + detail::sci(estimate_a) + " vs " +
              detail::sci(estimate_b) + ")"),
        a_(estimate_a),
        b_(estimate_b) {}

  double estimate_a() const noexcept { return a_; }
  double estimate_b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

class UnsupportedSpecError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace levy
