#include "levy/fluctuation/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "levy/error.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/laplace.hpp"

namespace levy {

RenewalFunction::RenewalFunction(std::vector<double> x, std::vector<double> v, std::string method,
                                 double consistency)
    : x_(std::move(x)), v_(std::move(v)), method_(std::move(method)), consistency_(consistency) {
  if (x_.size() != v_.size() || x_.size() < 2) throw Error("RenewalFunction: need >= 2 matching points");
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (v_[i] < v_[i - 1]) ripple_ = std::max(ripple_, (v_[i - 1] - v_[i]) / v_[i - 1]);
  if (ripple_ > 0.0) std::sort(v_.begin(), v_.end());  // increasing rearrangement
  std::vector<double> lx(x_.size());
  std::vector<double> lv(v_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(v_[i] > 0.0)) throw Error("RenewalFunction: values must be positive on the grid");
    lx[i] = std::log(x_[i]);
    lv[i] = std::log(v_[i]);
  }
  // Equal neighbours after rearrangement would stall log-log interpolation; nudge them apart.
  for (std::size_t i = 1; i < lv.size(); ++i)
    if (lv[i] <= lv[i - 1]) lv[i] = std::nextafter(lv[i - 1], 1e300);
  loglog_ = MonotoneCubic(std::move(lx), std::move(lv));
}

RenewalFunction RenewalFunction::from_function(std::span<const double> x, const std::function<double(double)>& f,
                                               std::string method) {
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> vs;
  for (double v : xs) vs.push_back(f(v));
  return RenewalFunction(std::move(xs), std::move(vs), std::move(method));
}

double RenewalFunction::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  return std::exp(loglog_(std::log(x)));
}

double RenewalFunction::slope(double a, double b) const {
  return (loglog_(std::log(b)) - loglog_(std::log(a))) / (std::log(b) - std::log(a));
}

std::vector<double> renewal_grid(const RenewalOptions& opt) {
  const double decades = std::log10(opt.x_hi / opt.x_lo);
  const auto n = static_cast<std::size_t>(std::llround(decades * static_cast<double>(opt.points_per_decade))) + 1;
  return log_grid(opt.x_lo, opt.x_hi, std::max<std::size_t>(n, 2));
}

RenewalFunction invert_renewal_transform(const std::function<std::complex<double>(std::complex<double>)>& F,
                                         std::span<const double> grid, const RenewalOptions& opt,
                                         const std::string& label) {
  std::vector<double> lo(grid.size());
  std::vector<double> hi(grid.size());
  std::string method;
  if (opt.method == InversionMethod::euler) {
    const auto r1 = laplace::euler_rule(opt.euler_order_lo);
    const auto r2 = laplace::euler_rule(opt.euler_order_hi);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      lo[i] = laplace::euler_invert(F, grid[i], r1);
      hi[i] = laplace::euler_invert(F, grid[i], r2);
    }
    method = "laplace-euler";
  } else {
    const auto w1 = laplace::stehfest_weights(opt.stehfest_order_lo);
    const auto w2 = laplace::stehfest_weights(opt.stehfest_order_hi);
    auto real_F = [&](double s) { return F(std::complex<double>(s, 0.0)).real(); };
    for (std::size_t i = 0; i < grid.size(); ++i) {
      lo[i] = laplace::stehfest_invert(real_F, grid[i], w1);
      hi[i] = laplace::stehfest_invert(real_F, grid[i], w2);
    }
    method = "laplace-stehfest";
  }
  double worst = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = std::abs(hi[i] - lo[i]) / std::max(std::abs(hi[i]), 1e-300);
    if (d > worst) {
      worst = d;
      worst_i = i;
    }
  }
  if (worst > opt.abort_threshold)
    throw InversionError(label + ": inversion orders disagree at x = " + detail::sci(grid[worst_i]), lo[worst_i],
                         hi[worst_i]);
  return RenewalFunction(std::vector<double>(grid.begin(), grid.end()), std::move(hi), method, worst);
}

RenewalFunction renewal_V(const LadderExponent& ladder, const RenewalOptions& opt) {
  auto F = [&](std::complex<double> lam) { return 1.0 / (lam * ladder.kappa_space(lam)); };
  return invert_renewal_transform(F, renewal_grid(opt), opt, "renewal function (" + ladder.spec().label() + ")");
}

RenewalFunction renewal_V(const ProcessSpec& spec, const RenewalOptions& opt) {
  return renewal_V(LadderExponent(spec), opt);
}

RenewalFunction renewal_V_hat(const ProcessSpec& spec, const RenewalOptions& opt) {
  return renewal_V(LadderExponent(spec.dual()), opt);
}

RenewalInvariants check_invariants(const RenewalFunction& V) {
  RenewalInvariants inv;
  const auto x = V.x();
  const auto v = V.values();
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) inv.monotone = false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) {
      const double s = V(x[i] + x[j]);
      inv.worst_subadditivity = std::max(inv.worst_subadditivity, (s - v[i] - v[j]) / s);
      const double lam = x[j] / x[i];
      inv.worst_growth = std::max(inv.worst_growth, v[j] / (2.0 * lam * v[i]));
    }
  return inv;
}

}  // namespace levy
