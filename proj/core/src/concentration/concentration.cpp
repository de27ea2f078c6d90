#include "levy/concentration/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "levy/error.hpp"
#include "levy/model/exponent.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/quadrature.hpp"

namespace levy {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConcentrationProfile::ConcentrationProfile(ProcessSpec spec, ConcentrationTolerance tol)
    : spec_(std::move(spec)), tol_(tol) {
  const auto& t = spec_.triplet();
  const auto mass = t.measure.total_mass();
  h_upper_ = (t.sigma > 0.0 || !mass) ? kInf : *mass;
}

double ConcentrationProfile::h(double r) const {
  if (!(r > 0.0)) throw Error("h: r must be positive");
  const auto& t = spec_.triplet();
  const double r2 = r * r;
  return t.sigma * t.sigma / r2 + t.measure.second_moment_below(r) / r2 + t.measure.mass_beyond(r);
}

double ConcentrationProfile::b(double r) const {
  if (!(r > 0.0)) throw Error("b_r: r must be positive");
  const auto& t = spec_.triplet();
  if (r == 1.0) return t.gamma;
  if (r < 1.0) return t.gamma - t.measure.first_moment_annulus(r, 1.0);
  return t.gamma + t.measure.first_moment_annulus(1.0, r);
}

double ConcentrationProfile::h_inv(double u) const {
  if (!(u > 0.0) || !(u < h_upper_)) throw RangeError("h_inv: value outside the range of h", 0.0, h_upper_);
  // h is continuous and strictly decreasing; bracket in log r and solve.
  auto g = [&](double s) { return std::log(h(std::exp(s))) - std::log(u); };
  double lo = 0.0;
  double hi = 0.0;
  if (g(0.0) > 0.0) {
    hi = 1.0;
    while (g(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1400.0) throw RangeError("h_inv: value below the numerically reachable range", 0.0, h_upper_);
    }
  } else {
    lo = -1.0;
    while (g(lo) < 0.0) {
      hi = lo;
      lo *= 2.0;
      if (lo < -1400.0) throw RangeError("h_inv: value above the numerically reachable range", 0.0, h_upper_);
    }
  }
  std::uintmax_t iters = 200;
  const auto tol = [&](double a, double b) { return std::abs(b - a) <= tol_.h_inv_rel * 1e-2; };
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
  return std::exp(0.5 * (a + b));
}

double ConcentrationProfile::h_quadrature(double r) const {
  if (!(r > 0.0)) throw Error("h: r must be positive");
  const auto& t = spec_.triplet();
  const auto& m = t.measure;
  double total = t.sigma * t.sigma / (r * r);
  boost::math::quadrature::exp_sinh<double> es;
  for (Side side : {Side::positive, Side::negative}) {
    const double sign = side == Side::positive ? 1.0 : -1.0;
    auto f = [&](double u) { return m.density(sign * u); };
    if (std::none_of(m.pieces().begin(), m.pieces().end(), [&](const PowerPiece& p) { return p.side == side; }))
      continue;
    const auto near = quad::integrate_singular([&](double u) { return u * u * f(u); }, 0.0, r, tol_.quadrature_rel,
                                               "h: small jumps");
    double err = 0.0;
    const double far = es.integrate(f, r, kInf, tol_.quadrature_rel, &err);
    total += near.value / (r * r) + far;
  }
  return total;
}

double ConcentrationProfile::b_quadrature(double r) const {
  const auto& t = spec_.triplet();
  if (r == 1.0) return t.gamma;
  const double lo = std::min(r, 1.0);
  const double hi = std::max(r, 1.0);
  auto g = [&](double u) { return u * (t.measure.density(u) - t.measure.density(-u)); };
  quad::Tolerance tol{1e-14, tol_.quadrature_rel, 4000};
  const double annulus = quad::integrate(g, lo, hi, tol, {}, "b_r: annulus").value;
  return r < 1.0 ? t.gamma - annulus : t.gamma + annulus;
}

double ConcentrationProfile::sup_re_psi(double r) const {
  const double top = 1.0 / r;
  const auto grid = log_grid(top * 1e-6, top, 512);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = psi(spec_, grid[i]).real();
  const auto it = std::max_element(v.begin(), v.end());
  const std::size_t k = static_cast<std::size_t>(it - v.begin());
  double best = *it;
  if (k + 1 < grid.size()) {
    // Interior maximum: refine with golden section on the neighbouring cell pair.
    const double lo = grid[k == 0 ? 0 : k - 1];
    const double hi = grid[k + 1];
    auto neg = [&](double x) { return -psi(spec_, x).real(); };
    const auto [x, fx] = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
    best = std::max(best, -fx);
  }
  return best;
}

std::vector<ConcentrationRow> concentration_table(const ConcentrationProfile& p, std::span<const double> r_grid) {
  std::vector<ConcentrationRow> rows;
  rows.reserve(r_grid.size());
  for (double r : r_grid) rows.push_back({r, p.h(r), p.b(r), p.sup_re_psi(r)});
  return rows;
}

void write_concentration_csv(std::ostream& os, std::span<const ConcentrationRow> rows) {
  os << "r,h,b_r,sup_re_psi\n" << std::setprecision(17);
  for (const auto& row : rows) os << row.r << ',' << row.h << ',' << row.b << ',' << row.sup_re_psi << '\n';
}

}  // namespace levy
