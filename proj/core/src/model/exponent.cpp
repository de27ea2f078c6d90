#include "levy/model/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "levy/error.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/oscillatory.hpp"
#include "levy/numerics/quadrature.hpp"

namespace levy {

namespace {

using C = std::complex<double>;

constexpr double kTiny = 1e-100;  // below this the u^2-weighted density is negligible

// sin z - z without cancellation for small z.
double sin_minus_id(double z) {
  if (std::abs(z) < 0.1) {
    const double z2 = z * z;
    return -z * z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0 * (1.0 - z2 / 72.0)));
  }
  return std::sin(z) - z;
}

// \int_0^\infty (e^{iwu} - 1 - iwu 1_{u<1}) f(u) du for a density f on (0, inf).
template <typename F>
C side_integral(const F& f, double w) {
  const double aw = std::abs(w);
  const double a = std::min(1.0 / aw, 1.0);
  const double half = std::numbers::pi / aw;
  quad::Tolerance tol{1e-14, 1e-11, 20000};

  // Region 1: |w u| <= 1, series-safe real and imaginary parts.
  auto re1 = [&](double u) {
    if (u < kTiny) return 0.0;
    const double s = std::sin(0.5 * w * u);
    return -2.0 * s * s * f(u);
  };
  auto im1 = [&](double u) {
    if (u < kTiny) return 0.0;
    return sin_minus_id(w * u) * f(u);
  };
  C total(quad::integrate_singular(re1, 0.0, a, 1e-12, "psi quadrature: small jumps (real)").value,
          quad::integrate_singular(im1, 0.0, a, 1e-12, "psi quadrature: small jumps (imag)").value);

  // Region 2: 1/|w| <= u < 1.
  if (a < 1.0) {
    std::vector<double> cuts;
    for (double c = (std::floor(a / half) + 1.0) * half; c < 1.0; c += half) cuts.push_back(c);
    auto g = [&](double u) { return (std::exp(C(0.0, w * u)) - 1.0 - C(0.0, w * u)) * f(u); };
    total += quad::integrate(g, a, 1.0, tol, cuts, "psi quadrature: intermediate jumps").value;
  }

  // Region 3: u >= 1, split at K so the subtraction of the mass beyond K is benign.
  const double K = std::max(1.0, 25.0 / aw);
  if (K > 1.0) {
    std::vector<double> cuts;
    for (double c = (std::floor(1.0 / half) + 1.0) * half; c < K; c += half) cuts.push_back(c);
    auto g = [&](double u) {
      const double s = std::sin(0.5 * w * u);
      return C(-2.0 * s * s, std::sin(w * u)) * f(u);
    };
    total += quad::integrate(g, 1.0, K, tol, cuts, "psi quadrature: large jumps").value;
  }
  quad::OscillatoryOptions opt;
  opt.abs = 1e-15;
  opt.rel = 1e-11;
  auto tail = quad::fourier_tail(f, K, w, opt);
  boost::math::quadrature::exp_sinh<double> es;
  double err = 0.0;
  const double mass = es.integrate(f, K, std::numeric_limits<double>::infinity(), 1e-12, &err);
  if (!std::isfinite(mass)) throw QuadratureError("psi quadrature: tail mass", err, 1e-12);
  total += tail.value - mass;
  return total;
}

}  // namespace

std::complex<double> psi_quadrature(const LevyTriplet& t, double xi) {
  if (xi == 0.0) return C{};
  C value(t.sigma * t.sigma * xi * xi, -t.gamma * xi);
  const auto& m = t.measure;
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& p : m.pieces()) (p.side == Side::positive ? has_pos : has_neg) = true;
  if (has_pos) value -= side_integral([&](double u) { return m.density(u); }, xi);
  if (has_neg) value -= side_integral([&](double u) { return m.density(-u); }, -xi);
  return value;
}

std::complex<double> psi(const ProcessSpec& spec, double xi) {
  if (auto c = spec.closed_form_psi(xi)) return *c;
  return psi_quadrature(spec.triplet(), xi);
}

std::optional<double> mean_x1(const ProcessSpec& spec) {
  const auto& t = spec.triplet();
  const auto big = t.measure.first_moment_beyond(1.0);
  if (!big) return std::nullopt;
  return t.gamma + *big;
}

ScalingCertificate check_wlsc(const std::function<double(double)>& f, double alpha, std::span<const double> grid) {
  if (grid.size() < 2) throw Error("check_wlsc: grid needs at least two points");
  std::vector<double> x(grid.begin(), grid.end());
  std::sort(x.begin(), x.end());
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    v[i] = f(x[i]);
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw Error("check_wlsc: f must be positive and finite on the grid (x = " + std::to_string(x[i]) + ")");
  }
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) worst = std::min(worst, v[j] / (std::pow(x[j] / x[i], alpha) * v[i]));
  return {alpha, worst, x.front(), x.back(), worst, std::move(x)};
}

double lower_scaling_index(const std::function<double(double)>& f, std::span<const double> grid, double min_lambda) {
  std::vector<double> x(grid.begin(), grid.end());
  std::sort(x.begin(), x.end());
  std::vector<double> lv(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = f(x[i]);
    if (!(v > 0.0)) throw Error("lower_scaling_index: f must be positive on the grid");
    lv[i] = std::log(v);
  }
  double idx = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double ll = std::log(x[j] / x[i]);
      if (ll < std::log(min_lambda)) continue;
      idx = std::min(idx, (lv[j] - lv[i]) / ll);
    }
  return idx;
}

Gates evaluate_gates(const ProcessSpec& spec) {
  Gates g;
  g.mean = mean_x1(spec);
  g.zero_mean = g.mean && std::abs(*g.mean) <= 1e-9;
  const auto grid = log_grid(1e-4, 1e4, 41);
  g.scaling_index = lower_scaling_index([&](double x) { return psi(spec, x).real(); }, grid);
  g.wlsc_above_one = g.scaling_index > 1.0 + 1e-6;
  const auto& t = spec.triplet();
  g.unbounded_variation = t.sigma > 0.0;
  for (const auto& p : t.measure.pieces())
    if (p.index >= 1.0) g.unbounded_variation = true;
  return g;
}

}  // namespace levy
