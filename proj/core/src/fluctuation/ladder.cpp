#include "levy/fluctuation/ladder.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "levy/error.hpp"
#include "levy/model/exponent.hpp"
#include "levy/numerics/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace levy {

namespace {

using C = std::complex<double>;

std::vector<double> unit_cuts(double a, double b, double step = 1.0) {
  std::vector<double> cuts;
  for (double c = std::ceil(a / step) * step; c < b; c += step) cuts.push_back(c);
  return cuts;
}

}  // namespace

LadderExponent::LadderExponent(ProcessSpec spec, LadderOptions opt)
    : spec_(std::move(spec)), opt_(opt), curve_(spec_, opt.t_lo, opt.t_hi, opt.curve_points) {
  if (!opt_.space_axis) return;
  log_anchor_ = log_kappa_space_direct(opt_.anchor);
  if (opt_.tabulate && spec_.has_closed_form_psi()) build_table();
}

void LadderExponent::build_table() {
  // Integrand tails decay like e^{-|v|} beyond [log lambda_lo - 32, log lambda_hi + 32].
  const double lo = std::log(std::min(opt_.table_lambda_lo, opt_.anchor)) - 32.0;
  const double hi = std::log(std::max(opt_.table_lambda_hi, opt_.anchor)) + 32.0;
  const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / opt_.table_panel));
  const double h = (hi - lo) / static_cast<double>(panels);
  using G = boost::math::quadrature::gauss<double, 15>;
  const auto& xa = G::abscissa();
  const auto& wa = G::weights();
  table_xi_.reserve(panels * 15);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = lo + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < xa.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        if (xa[i] == 0.0 && sgn < 0.0) continue;
        const double xi = std::exp(c + sgn * 0.5 * h * xa[i]);
        table_xi_.push_back(xi);
        table_w_.push_back(0.5 * h * wa[i] * xi);
        table_lp_.push_back(std::log(psi(spec_, xi)));
      }
    }
  }
}

double LadderExponent::kappa_time(double z) const {
  if (!(z > 0.0)) throw Error("kappa_time: z must be positive");
  if (z == 1.0) return 1.0;
  // u = log s; e^{-s} - e^{-zs} = -e^{-s} expm1(-(z-1)s) = e^{-zs} expm1(-(1-z)s).
  auto f = [&](double u) {
    const double s = std::exp(u);
    const double d = z > 1.0 ? -std::exp(-s) * std::expm1(-(z - 1.0) * s) : std::exp(-z * s) * std::expm1(-(1.0 - z) * s);
    return d * curve_(s);
  };
  const double lo = std::log(1e-16 / std::max(z, 1.0));
  const double hi = std::log(80.0 / std::min(z, 1.0));
  quad::Tolerance tol{1e-14, 1e-12, 4000};
  const auto cuts = unit_cuts(lo, hi);
  return std::exp(quad::integrate(f, lo, hi, tol, cuts, "kappa(z,0)").value);
}

std::optional<double> LadderExponent::kappa_time_closed_form(double z) const {
  if (const auto rho = spec_.stable_positivity()) return std::pow(z, *rho);
  return std::nullopt;
}

double LadderExponent::log_kappa_space_direct(double mu) const {
  if (!(mu > 0.0)) throw Error("kappa(0,lambda): lambda must be positive");
  // For fixed s, with phi = e^{-s psi}:
  //   A = \int_0^\infty mu (Re phi - mu Im phi / xi) / (mu^2 + xi^2) dxi   (1/2 - A/pi = rho - G)
  //   B = \int_0^\infty Im phi / xi dxi                                      (rho = 1/2 + B/pi)
  // and e^{-s} rho - G = e^{-s}/2 - A/pi - (1 - e^{-s}) B/pi.
  FourierOptions fopt;
  auto inner = [&](double s) {
    const auto w = frequency_window(spec_, s, fopt);
    auto g = [&](double xi) {
      if (xi == 0.0) return C{};
      const C phi = std::exp(-s * psi(spec_, xi));
      const double d = mu * mu + xi * xi;
      return C(mu * (phi.real() - mu * phi.imag() / xi) / d, phi.imag() / xi);
    };
    const double top = std::max(w.cutoff, 1e3 * mu);
    std::vector<double> cuts;
    for (double c = std::min(mu, w.scale) * 1e-12; c < top; c *= 4.0) cuts.push_back(c);
    cuts.push_back(mu);
    // The outer integral only needs ~1e-9, so 1e-12 absolute is ample here.
    quad::Tolerance tol{1e-12, 1e-11, 4000};
    const C ab = quad::integrate(g, 0.0, top, tol, cuts, "kappa(0,lambda): inner Fourier integral").value;
    const double em = std::exp(-s);
    return 0.5 * em - ab.real() / std::numbers::pi - (-std::expm1(-s)) * ab.imag() / std::numbers::pi;
  };
  auto f = [&](double u) { return inner(std::exp(u)); };  // ds/s = du
  const double lo = std::log(1e-12);
  const double hi = std::log(1e10);
  // The inner values carry ~1e-13 absolute noise from the 1/2 - A/pi cancellation at small s.
  quad::Tolerance tol{1e-9, 1e-9, 2000};
  double total = quad::integrate(f, lo, hi, tol, unit_cuts(lo, hi, 2.0), "kappa(0,lambda): time integral").value;
  // Power-law tails: integrand ~ s^{p} near both ends; add \int beyond with the fitted exponent.
  const double s_lo = std::exp(lo);
  const double s_hi = std::exp(hi);
  const double f_lo = inner(s_lo);
  const double f_lo2 = inner(10.0 * s_lo);
  const double f_hi = inner(s_hi);
  const double f_hi2 = inner(0.1 * s_hi);
  if (f_lo != 0.0 && f_lo2 / f_lo > 1.0) {
    const double p = std::log10(f_lo2 / f_lo);  // f ~ s^p, p > 0
    total += f_lo / p;
  }
  if (f_hi != 0.0 && f_hi2 / f_hi > 1.0) {
    const double p = std::log10(f_hi2 / f_hi);  // f ~ s^{-p}
    total += f_hi / p;
  }
  return total;
}

double LadderExponent::kappa_space_direct(double lam) const { return std::exp(log_kappa_space_direct(lam)); }

std::complex<double> LadderExponent::log_kappa_space(std::complex<double> lam) const {
  if (!(lam.real() > 0.0)) throw Error("kappa(0,lambda): Re lambda must be positive");
  const double mu = opt_.anchor;
  if (!opt_.space_axis) throw Error("kappa(0,lambda): ladder built for the time axis only");
  if (lam == C(mu, 0.0)) return log_anchor_;
  const auto tab = wiener_hopf_table(lam);
  const C integral = tab ? *tab : wiener_hopf_adaptive(lam);
  return log_anchor_ - (lam - mu) / (2.0 * std::numbers::pi) * integral;
}

// \int_R log psi(xi) / ((mu + i xi)(lam + i xi)) dxi folded onto xi > 0 using psi(-xi) = conj psi(xi).
std::optional<std::complex<double>> LadderExponent::wiener_hopf_table(std::complex<double> lam) const {
  if (table_xi_.empty()) return std::nullopt;
  const double r = std::abs(lam);
  if (r < opt_.table_lambda_lo || r > opt_.table_lambda_hi) return std::nullopt;
  // The near-pole at xi = |Im lam| has relative width Re lam / |Im lam| in v; the
  // panels resolve widths well above their own size.
  if (lam.real() < 2.0 * opt_.table_panel * std::abs(lam.imag())) return std::nullopt;
  const double mu = opt_.anchor;
  C sum{};
  for (std::size_t k = 0; k < table_xi_.size(); ++k) {
    const C ix(0.0, table_xi_[k]);
    const C lp = table_lp_[k];
    sum += (lp / ((mu + ix) * (lam + ix)) + std::conj(lp) / ((mu - ix) * (lam - ix))) * table_w_[k];
  }
  return sum;
}

std::complex<double> LadderExponent::wiener_hopf_adaptive(std::complex<double> lam) const {
  const double mu = opt_.anchor;
  auto g = [&](double v) {
    const double xi = std::exp(v);
    const C lp = std::log(psi(spec_, xi));
    const C ix(0.0, xi);
    return (lp / ((mu + ix) * (lam + ix)) + std::conj(lp) / ((mu - ix) * (lam - ix))) * xi;
  };
  const double small = std::min(mu, std::abs(lam));
  const double big = std::max(mu, std::abs(lam));
  const double lo = std::log(small) - 32.0;
  const double hi = std::log(big) + 32.0;
  auto cuts = unit_cuts(lo, hi);
  if (std::abs(lam.imag()) > 0.0) {
    // Near-pole of 1/(lam - i xi) at xi = |Im lam| with width Re lam.
    const double b = std::abs(lam.imag());
    for (double c : {b - lam.real(), b, b + lam.real()})
      if (c > 0.0) cuts.push_back(std::log(c));
  }
  quad::Tolerance tol{1e-15, 1e-13, 8000};
  return quad::integrate(g, lo, hi, tol, cuts, "kappa(0,lambda): Wiener-Hopf integral").value;
}

std::complex<double> LadderExponent::kappa_space(std::complex<double> lam) const {
  return std::exp(log_kappa_space(lam));
}

double LadderExponent::kappa_space(double lam) const { return std::exp(log_kappa_space(C(lam, 0.0)).real()); }

}  // namespace levy
