#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "levy/fluctuation/ladder.hpp"
#include "levy/numerics/interp.hpp"

namespace levy {

enum class InversionMethod { euler, stehfest };

struct RenewalOptions {
  double x_lo = 1e-4;
  double x_hi = 1e4;
  std::size_t points_per_decade = 6;
  InversionMethod method = InversionMethod::euler;
  int euler_order_lo = 10;  // two orders give the self-consistency estimate
  int euler_order_hi = 14;
  int stehfest_order_lo = 12;
  int stehfest_order_hi = 14;
  double consistency_target = 1e-4;
  double abort_threshold = 1e-3;
};

// Tabulated non-decreasing V on a log grid, interpolated monotonically in
// log-log coordinates (power-law extrapolation beyond the table, V(0) = 0).
class RenewalFunction {
 public:
  RenewalFunction() = default;
  RenewalFunction(std::vector<double> x, std::vector<double> v, std::string method, double consistency = 0.0);

  static RenewalFunction from_function(std::span<const double> x, const std::function<double(double)>& f,
                                       std::string method);

  double operator()(double x) const;
  // Log-log slope of V between a and b.
  double slope(double a, double b) const;

  std::span<const double> x() const { return x_; }
  std::span<const double> values() const { return v_; }
  const std::string& method() const { return method_; }
  // Largest relative disagreement between the two inversion orders.
  double consistency() const { return consistency_; }
  bool consistent() const { return consistency_ <= 1e-4; }
  // Largest relative dip removed by the monotone rearrangement.
  double ripple() const { return ripple_; }

 private:
  std::vector<double> x_;
  std::vector<double> v_;
  std::string method_;
  double consistency_ = 0.0;
  double ripple_ = 0.0;
  MonotoneCubic loglog_;
};

// Inverts a Laplace transform of V (i.e. \int e^{-lx} V(x) dx = F(l)) on `grid`
// with two orders; throws InversionError when they disagree by more than the
// abort threshold.
RenewalFunction invert_renewal_transform(const std::function<std::complex<double>(std::complex<double>)>& F,
                                         std::span<const double> grid, const RenewalOptions& opt,
                                         const std::string& label);

std::vector<double> renewal_grid(const RenewalOptions& opt);

// V from L V(l) = 1/(l kappa(0, l)).
RenewalFunction renewal_V(const LadderExponent& ladder, const RenewalOptions& opt = {});
RenewalFunction renewal_V(const ProcessSpec& spec, const RenewalOptions& opt = {});
// V of the reflected process.
RenewalFunction renewal_V_hat(const ProcessSpec& spec, const RenewalOptions& opt = {});

struct RenewalInvariants {
  bool monotone = true;
  double worst_subadditivity = 0.0;  // max (V(x+y) - V(x) - V(y)) / V(x+y)
  double worst_growth = 0.0;         // max V(lx) / (2 l V(x)) over l >= 1
  bool holds(double tol = 1e-6) const { return monotone && worst_subadditivity <= tol && worst_growth <= 1 + tol; }
};
RenewalInvariants check_invariants(const RenewalFunction& V);

}  // namespace levy
