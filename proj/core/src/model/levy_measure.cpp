#include "levy/model/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "levy/error.hpp"
#include "levy/numerics/quadrature.hpp"
#include "levy/numerics/special.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEulerGamma = 0.57721566490153286061;

bool is_integer(double y) { return std::floor(y) == y; }

}  // namespace

std::string to_string(Side s) { return s == Side::positive ? "positive" : "negative"; }

double PowerPiece::density(double u) const {
  if (!(u > 0.0)) return 0.0;
  return weight * std::exp(-decay * u) * std::pow(u, -1.0 - index);
}

double PowerPiece::tail(double r) const {
  if (weight == 0.0) return 0.0;
  if (!(r > 0.0)) {
    if (finite_mass()) return weight * std::pow(decay, index) * std::tgamma(-index);
    return kInf;
  }
  if (decay == 0.0) return weight * std::pow(r, -index) / index;
  return weight * std::pow(decay, index) * special::upper_gamma(-index, decay * r);
}

double PowerPiece::second_moment_below(double r) const {
  if (weight == 0.0 || !(r > 0.0)) return 0.0;
  if (decay == 0.0) return weight * std::pow(r, 2.0 - index) / (2.0 - index);
  return weight * std::pow(decay, index - 2.0) * special::lower_gamma(2.0 - index, decay * r);
}

double PowerPiece::first_moment_between(double a, double b) const {
  if (weight == 0.0 || !(b > a)) return 0.0;
  const double s = 1.0 - index;  // exponent of u in u * density
  if (decay == 0.0) {
    if (std::isinf(b) && index <= 1.0) return kInf;
    if (a == 0.0 && index >= 1.0) return kInf;
    if (index == 1.0) return weight * std::log(b / a);
    const double hi = std::isinf(b) ? 0.0 : std::pow(b, s);
    const double lo = a == 0.0 ? 0.0 : std::pow(a, s);
    return weight * (hi - lo) / s;
  }
  const double scale = weight * std::pow(decay, index - 1.0);
  if (a == 0.0) {
    if (index >= 1.0) return kInf;
    const double hi = std::isinf(b) ? std::tgamma(s) : special::lower_gamma(s, decay * b);
    return scale * hi;
  }
  const double up_a = special::upper_gamma(s, decay * a);
  const double up_b = std::isinf(b) ? 0.0 : special::upper_gamma(s, decay * b);
  return scale * (up_a - up_b);
}

std::complex<double> PowerPiece::exponent_on_positive_axis(double w) const {
  using C = std::complex<double>;
  if (weight == 0.0 || w == 0.0) return C{};
  const double Y = index;
  const C iw(0.0, w);
  if (decay == 0.0) {
    if (Y == 1.0) {
      // \int_0^\infty (e^{iwu} - 1 - iwu 1_{u<1}) u^{-2} du = -pi|w|/2 - i w log|w| + i (1 - gamma_E) w
      const C base(-0.5 * std::numbers::pi * std::abs(w), -w * std::log(std::abs(w)) + (1.0 - kEulerGamma) * w);
      return -weight * base;
    }
    const double sgn = w > 0 ? 1.0 : -1.0;
    const C minus_iw_pow = std::pow(std::abs(w), Y) * std::exp(C(0.0, -0.5 * std::numbers::pi * Y * sgn));
    const C core = weight * std::tgamma(-Y) * minus_iw_pow;
    if (Y < 1.0) return -core + iw * first_moment_between(0.0, 1.0);
    return -core - iw * first_moment_between(1.0, kInf);
  }
  const double lam = decay;
  const C z = C(lam, -w);  // lambda - i w
  if (std::abs(w) < 0.2 * lam) return exponent_series(w);
  if (Y < 1.0) {
    C a;
    if (Y == 0.0) {
      a = -weight * std::log(z / lam);
    } else {
      a = weight * std::tgamma(-Y) * (std::pow(z, Y) - std::pow(lam, Y));
    }
    return -a + iw * first_moment_between(0.0, 1.0);
  }
  C b;
  if (Y == 1.0) {
    b = weight * (z * std::log(z / lam) + iw);
  } else {
    b = weight * std::tgamma(-Y) * (std::pow(z, Y) - std::pow(lam, Y) + iw * Y * std::pow(lam, Y - 1.0));
  }
  return -b - iw * first_moment_between(1.0, kInf);
}

// Tempered piece for |w| << decay. With u = i w / decay the closed forms reduce to
// power series in u (no cancellation between (decay - i w)^Y and decay^Y):
//   (1-u)^Y - 1 + Y u = sum_{k>=2} binom(Y,k) (-u)^k,   (1-u) log(1-u) + u = sum_{k>=2} u^k / (k(k-1)).
std::complex<double> PowerPiece::exponent_series(double w) const {
  using C = std::complex<double>;
  const double lam = decay;
  const double Y = index;
  const C u(0.0, w / lam);
  const C iw(0.0, w);
  C sum{};
  C power = Y < 1.0 ? C(1.0) : u;  // u^{k-1}
  const int k0 = Y < 1.0 ? 1 : 2;
  double coef = 1.0;  // binom(Y, k) (-1)^k, built incrementally
  if (k0 == 2) coef = -Y;
  for (int k = k0; k < 80; ++k) {
    power *= u;
    C term;
    if (Y == 0.0) {
      term = power / static_cast<double>(k);
    } else if (Y == 1.0) {
      term = power / static_cast<double>(k * (k - 1));
    } else {
      coef *= -(Y - static_cast<double>(k - 1)) / static_cast<double>(k);
      term = coef * power;
    }
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  if (Y < 1.0) {
    // Y = 0: a = -weight log(1-u) = weight sum u^k/k;  else a = weight Gamma(-Y) lam^Y sum.
    const C a = Y == 0.0 ? weight * sum : weight * std::tgamma(-Y) * std::pow(lam, Y) * sum;
    return -a + iw * first_moment_between(0.0, 1.0);
  }
  const C b = Y == 1.0 ? weight * lam * sum : weight * std::tgamma(-Y) * std::pow(lam, Y) * sum;
  return -b - iw * first_moment_between(1.0, std::numeric_limits<double>::infinity());
}

LevyMeasure::LevyMeasure(std::vector<PowerPiece> pieces) : pieces_(std::move(pieces)) {
  for (const auto& p : pieces_) {
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) throw SpecError("Levy measure weight must be finite and >= 0");
    if (!(p.decay >= 0.0) || !std::isfinite(p.decay)) throw SpecError("Levy measure decay must be finite and >= 0");
    if (!(p.index < 2.0)) throw SpecError("Levy measure index must be < 2 (integrability of 1 ^ x^2)");
    if (p.decay == 0.0 && !(p.index > 0.0))
      throw SpecError("untempered Levy measure component needs index in (0,2)");
    if (p.decay > 0.0 && p.index < 0.0 && is_integer(-p.index) && p.index < -2.0)
      throw SpecError("tempered component index below -2 is not supported");
  }
  std::erase_if(pieces_, [](const PowerPiece& p) { return p.weight == 0.0; });
}

double LevyMeasure::density(double x) const {
  double d = 0.0;
  for (const auto& p : pieces_) {
    if (x > 0.0 && p.side == Side::positive) d += p.density(x);
    if (x < 0.0 && p.side == Side::negative) d += p.density(-x);
  }
  return d;
}

double LevyMeasure::tail(Side side, double r) const {
  double t = 0.0;
  for (const auto& p : pieces_)
    if (p.side == side) t += p.tail(r);
  return t;
}

double LevyMeasure::upper_tail(double r) const { return tail(Side::positive, r); }
double LevyMeasure::lower_tail(double r) const { return tail(Side::negative, r); }

double LevyMeasure::second_moment_below(double r) const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.second_moment_below(r);
  return m;
}

double LevyMeasure::first_moment_annulus(double a, double b) const {
  double m = 0.0;
  for (const auto& p : pieces_) {
    const double v = p.first_moment_between(a, b);
    m += p.side == Side::positive ? v : -v;
  }
  return m;
}

std::optional<double> LevyMeasure::first_moment_beyond(double r) const {
  for (const auto& p : pieces_)
    if (!p.finite_first_moment_at_infinity()) return std::nullopt;
  return first_moment_annulus(r, kInf);
}

std::optional<double> LevyMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& p : pieces_) {
    if (!p.finite_mass()) return std::nullopt;
    m += p.tail(0.0);
  }
  return m;
}

std::complex<double> LevyMeasure::exponent(double xi) const {
  std::complex<double> e{};
  for (const auto& p : pieces_) e += p.exponent_on_positive_axis(p.side == Side::positive ? xi : -xi);
  return e;
}

LevyMeasure LevyMeasure::reflected() const {
  std::vector<PowerPiece> r(pieces_.begin(), pieces_.end());
  for (auto& p : r) p.side = opposite(p.side);
  return LevyMeasure(std::move(r));
}

bool LevyMeasure::one_sided(Side side) const {
  return std::all_of(pieces_.begin(), pieces_.end(), [&](const PowerPiece& p) { return p.side == side; });
}

bool LevyMeasure::symmetric() const {
  // Symmetric iff the multiset of pieces is invariant under reflection.
  auto key = [](const PowerPiece& p) { return std::tuple(p.weight, p.decay, p.index); };
  std::vector<std::tuple<double, double, double>> pos, neg;
  for (const auto& p : pieces_) (p.side == Side::positive ? pos : neg).push_back(key(p));
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  return pos == neg;
}

MeasureCheck validate_measure(const LevyMeasure& m) {
  MeasureCheck out;
  if (m.empty()) return out;
  boost::math::quadrature::exp_sinh<double> es;
  for (Side side : {Side::positive, Side::negative}) {
    auto f = [&](double u) { return m.density(side == Side::positive ? u : -u); };
    // \int_0^1 u^2 f(u) du + \int_1^inf f(u) du
    auto near = quad::integrate_singular([&](double u) { return u * u * f(u); }, 0.0, 1.0, 1e-11,
                                         "measure check: small jumps");
    double far_err = 0.0;
    const double far = es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-11, &far_err);
    if (!std::isfinite(near.value) || !std::isfinite(far))
      throw SpecError("Levy measure fails \\int (1 ^ x^2) nu(dx) < inf");
    out.integral_one_wedge_x2 += near.value + far;

    // Tail consistency at sampled radii.
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double closed = m.tail(side, r);
      if (closed > prev * (1.0 + 1e-12)) throw SpecError("Levy measure tail is not non-increasing");
      prev = closed;
      if (closed < 1e-280) continue;
      double err = 0.0;
      const double numeric = es.integrate(f, r, std::numeric_limits<double>::infinity(), 1e-12, &err);
      const double rel = std::abs(numeric - closed) / std::max(closed, 1e-300);
      out.worst_tail_mismatch = std::max(out.worst_tail_mismatch, rel);
    }
  }
  if (out.worst_tail_mismatch > 1e-6)
    throw SpecError("Levy measure tails inconsistent with density (relative mismatch " +
                    std::to_string(out.worst_tail_mismatch) + ")");
  return out;
}

}  // namespace levy
