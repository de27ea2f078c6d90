#include "levy/spectral/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "levy/concentration/concentration.hpp"
#include "levy/error.hpp"
#include "levy/model/exponent.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/oscillatory.hpp"
#include "levy/numerics/quadrature.hpp"

namespace levy {

namespace {

using C = std::complex<double>;
constexpr std::size_t kMaxPeriodCuts = 5000;

// \int_0^{cutoff} f over geometric cuts below `scale` and half-period cuts of e^{i x xi}.
template <typename F>
double integrate_frequency(F&& f, const FrequencyWindow& w, double x, const FourierOptions& opt, const char* what) {
  std::vector<double> cuts;
  for (double c = w.scale * 1e-12; c < w.cutoff; c *= 4.0) cuts.push_back(c);
  if (x != 0.0) {
    const double half = std::numbers::pi / std::abs(x);
    const double n = w.cutoff / half;
    if (n < static_cast<double>(kMaxPeriodCuts))
      for (double c = half; c < w.cutoff; c += half) cuts.push_back(c);
  }
  quad::Tolerance tol{opt.abs_tol, opt.rel_tol, 40000};
  return quad::integrate(f, 0.0, w.cutoff, tol, cuts, what).value;
}

}  // namespace

FrequencyWindow frequency_window(const ProcessSpec& spec, double t, const FourierOptions& opt) {
  if (!(t > 0.0)) throw Error("frequency window: t must be positive");
  auto level = [&](double xi) { return t * psi(spec, xi).real(); };
  double xi = 1.0;
  if (level(xi) >= 1.0) {
    while (level(xi) >= 1.0) {
      xi *= 0.5;
      if (xi < 1e-30) throw Error("frequency window: Re psi does not vanish at the origin");
    }
  } else {
    while (level(xi) < 1.0) {
      xi *= 2.0;
      if (xi > 1e30) throw Error("non-integrable characteristic function: t Re psi stays below 1");
    }
  }
  FrequencyWindow w{xi, xi};
  while (level(w.cutoff) <= opt.cutoff) {
    w.cutoff *= 2.0;
    if (w.cutoff > 1e40) throw Error("non-integrable characteristic function: e^{-t psi} does not decay");
  }
  return w;
}

double density(const ProcessSpec& spec, double t, double x, const FourierOptions& opt) {
  const auto w = frequency_window(spec, t, opt);
  auto f = [&](double xi) { return (std::exp(C(0.0, -xi * x) - t * psi(spec, xi))).real(); };
  const double v = integrate_frequency(f, w, x, opt, "density: Fourier inversion") / std::numbers::pi;
  if (v < -1e-8) throw QuadratureError("density: negative value beyond tolerance", -v, 1e-8);
  return std::max(v, 0.0);
}

double cdf(const ProcessSpec& spec, double t, double x, const FourierOptions& opt) {
  const auto w = frequency_window(spec, t, opt);
  auto f = [&](double xi) {
    if (xi == 0.0) return 0.0;
    return std::exp(C(0.0, -xi * x) - t * psi(spec, xi)).imag() / xi;
  };
  const double v = 0.5 - integrate_frequency(f, w, x, opt, "cdf: Gil-Pelaez inversion") / std::numbers::pi;
  return std::clamp(v, 0.0, 1.0);
}

double positivity(const ProcessSpec& spec, double t, const FourierOptions& opt) {
  if (spec.symmetric()) return 0.5;
  return 1.0 - cdf(spec, t, 0.0, opt);
}

PositivityCurve::PositivityCurve(const ProcessSpec& spec, double t_lo, double t_hi, std::size_t n)
    : times_(log_grid(t_lo, t_hi, n)) {
  std::vector<double> logt;
  values_.reserve(n);
  eta_lower_ = 0.5;
  for (double t : times_) {
    const double rho = positivity(spec, t);
    values_.push_back(rho);
    logt.push_back(std::log(t));
    eta_lower_ = std::min(eta_lower_, std::min(rho, 1.0 - rho));
  }
  interp_ = MonotoneCubic(std::move(logt), values_);
}

double PositivityCurve::operator()(double t) const {
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  return std::clamp(interp_(std::log(t)), 0.0, 1.0);
}

void write_positivity_csv(std::ostream& os, const PositivityCurve& curve) {
  os << "t,rho\n" << std::setprecision(17);
  for (std::size_t i = 0; i < curve.times().size(); ++i) os << curve.times()[i] << ',' << curve.values()[i] << '\n';
}

void write_psi_csv(std::ostream& os, const ProcessSpec& spec, std::span<const double> xi_grid) {
  os << "xi,re_psi,im_psi\n" << std::setprecision(17);
  for (double xi : xi_grid) {
    const auto p = psi(spec, xi);
    os << xi << ',' << p.real() << ',' << p.imag() << '\n';
  }
}

BoundReport im_re_domination(const ProcessSpec& spec, bool zero_mean, std::span<const double> xi_grid) {
  BoundReport r;
  r.id = "im-re";
  r.description = "|Im psi(xi)| <= C Re psi(xi)";
  r.input_names = {"xi"};
  std::vector<double> grid(xi_grid.begin(), xi_grid.end());
  if (grid.empty()) grid = log_grid(zero_mean ? 1e-4 : 1.0, 1e4, zero_mean ? 81 : 41);
  for (double xi : grid) {
    const auto p = psi(spec, xi);
    r.add({xi}, std::abs(p.imag()), p.real());
  }
  r.summarize();
  r.metrics["C"] = r.max_ratio;
  r.metrics["all_xi"] = zero_mean ? 1.0 : 0.0;
  r.band_lo = 0.0;
  r.band_hi = std::numeric_limits<double>::infinity();
  r.verdict = std::isfinite(r.max_ratio) ? Verdict::pass : Verdict::fail;
  return r;
}

double ex3_integral(const ProcessSpec& spec, double x) {
  if (x == 0.0) throw Error("ex3_integral: x must be nonzero");
  const double ax = std::abs(x);
  auto g = [&](double y) {
    const auto p = psi(spec, y);
    return p.real() / std::norm(p);
  };
  const double A = 25.0 / ax;
  // Integrability at 0: (1 - cos) ~ y^2, so g must blow up slower than y^{-3}.
  const double y1 = A * 1e-7;
  const double y2 = A * 1e-8;
  const double decay = std::log(g(y2) / g(y1)) / std::log(10.0);
  if (!(decay < 3.0))
    throw Error("ex3_integral: Re(1/psi) is not integrable against 1 - cos at the origin (lower scaling index >= 3)");

  std::vector<double> cuts;
  for (double c = A; c > A * 1e-16; c *= 0.25) cuts.push_back(c);
  for (double c = std::numbers::pi / ax; c < A; c += std::numbers::pi / ax) cuts.push_back(c);
  quad::Tolerance tol{1e-14, 1e-10, 20000};
  auto near = [&](double y) {
    // Below this the integrand is O(y^{3 - index}) and negligible.
    if (y < A * 1e-30) return 0.0;
    const double s = std::sin(0.5 * x * y);
    return 2.0 * s * s * g(y);
  };
  const double head = quad::integrate(near, 0.0, A, tol, cuts, "ex3: near field").value;
  boost::math::quadrature::exp_sinh<double> es;
  double err = 0.0;
  const double mass = es.integrate(g, A, std::numeric_limits<double>::infinity(), 1e-11, &err);
  quad::OscillatoryOptions opt;
  opt.abs = 1e-14;
  opt.rel = 1e-10;
  const double osc = quad::fourier_tail(g, A, x, opt).value.real();
  return 2.0 * (head + mass - osc);
}

BoundReport ex3_report(const ProcessSpec& spec, std::span<const double> x_grid, double band) {
  BoundReport r;
  r.id = "ex3";
  r.description = "\\int (1 - cos(xy)) Re(1/psi(y)) dy ~ 1/(|x| h(|x|))";
  r.input_names = {"x"};
  ConcentrationProfile prof(spec);
  for (double x : x_grid) r.add({x}, ex3_integral(spec, x), 1.0 / (std::abs(x) * prof.h(std::abs(x))));
  r.judge_spread(band);
  return r;
}

}  // namespace levy
