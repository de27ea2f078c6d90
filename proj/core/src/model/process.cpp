#include "levy/model/process.hpp"

#include <cmath>
#include <numbers>

#include "levy/error.hpp"

namespace levy {

namespace {


template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw SpecError(msg);
}

// gamma such that E X_1 = mean, i.e. gamma = mean - \int_{|x|>=1} x nu(dx).
double gamma_for_mean(const LevyMeasure& m, double mean) {
  const auto big = m.first_moment_beyond(1.0);
  if (!big) throw SpecError("cannot prescribe E X_1: \\int_{|x|>=1} |x| nu(dx) is infinite");
  return mean - *big;
}

LevyTriplet stable_triplet(const StableParams& p) {
  require(p.alpha > 0.0 && p.alpha <= 2.0, "stable: alpha must lie in (0,2]");
  require(p.beta >= -1.0 && p.beta <= 1.0, "stable: beta must lie in [-1,1]");
  require(p.scale > 0.0, "stable: scale must be positive");
  if (p.alpha == 2.0) return {std::sqrt(p.scale), 0.0, {}};
  if (p.alpha == 1.0) {
    require(p.beta == 0.0, "stable: alpha = 1 is strictly stable only for beta = 0");
    // psi = c pi |xi| for density c |x|^{-2} on both sides.
    const double c = p.scale / std::numbers::pi;
    return {0.0, 0.0, LevyMeasure({{Side::positive, c, 0.0, 1.0}, {Side::negative, c, 0.0, 1.0}})};
  }
  const double a = p.alpha;
  // psi = s|xi|^a (1 - i beta tan(pi a/2) sgn xi) for densities c_pm |x|^{-1-a}
  // with s = -Gamma(-a) cos(pi a/2) (c_+ + c_-), beta = (c_+ - c_-)/(c_+ + c_-).
  const double total = p.scale / (-std::tgamma(-a) * std::cos(0.5 * std::numbers::pi * a));
  const double cp = 0.5 * (1.0 + p.beta) * total;
  const double cm = 0.5 * (1.0 - p.beta) * total;
  std::vector<PowerPiece> pieces;
  if (cp > 0.0) pieces.push_back({Side::positive, cp, 0.0, a});
  if (cm > 0.0) pieces.push_back({Side::negative, cm, 0.0, a});
  LevyMeasure m(std::move(pieces));
  // Strict stability fixes gamma: no extra linear drift after the natural centring.
  double gamma = 0.0;
  if (a > 1.0) {
    gamma = -*m.first_moment_beyond(1.0);
  } else {
    gamma = m.first_moment_annulus(0.0, 1.0);
  }
  return {0.0, gamma, std::move(m)};
}

LevyTriplet cgmy_triplet(const CgmyParams& p) {
  require(p.c_plus >= 0.0 && p.c_minus >= 0.0, "cgmy: C+ and C- must be >= 0");
  require(p.g > 0.0 && p.m > 0.0, "cgmy: G and M must be positive");
  require(p.y > 0.0 && p.y < 2.0, "cgmy: Y must lie in (0,2)");
  require(p.sigma >= 0.0, "cgmy: sigma must be >= 0");
  std::vector<PowerPiece> pieces;
  if (p.c_plus > 0.0) pieces.push_back({Side::positive, p.c_plus, p.m, p.y});
  if (p.c_minus > 0.0) pieces.push_back({Side::negative, p.c_minus, p.g, p.y});
  LevyMeasure m(std::move(pieces));
  const double gamma = gamma_for_mean(m, p.mean);
  return {p.sigma, gamma, std::move(m)};
}

LevyTriplet brownian_jumps_triplet(const BrownianJumpsParams& p) {
  require(p.sigma >= 0.0, "brownian_jumps: sigma must be >= 0");
  require(p.rate >= 0.0, "brownian_jumps: rate must be >= 0");
  std::vector<PowerPiece> pieces;
  switch (p.law) {
    case JumpLaw::exponential_up:
      require(p.eta_up > 0.0, "brownian_jumps: eta_up must be positive");
      pieces.push_back({Side::positive, p.rate * p.eta_up, p.eta_up, -1.0});
      break;
    case JumpLaw::exponential_down:
      require(p.eta_down > 0.0, "brownian_jumps: eta_down must be positive");
      pieces.push_back({Side::negative, p.rate * p.eta_down, p.eta_down, -1.0});
      break;
    case JumpLaw::double_exponential:
      require(p.p_up >= 0.0 && p.p_up <= 1.0, "brownian_jumps: p_up must lie in [0,1]");
      require(p.eta_up > 0.0 && p.eta_down > 0.0, "brownian_jumps: eta_up and eta_down must be positive");
      pieces.push_back({Side::positive, p.rate * p.p_up * p.eta_up, p.eta_up, -1.0});
      pieces.push_back({Side::negative, p.rate * (1.0 - p.p_up) * p.eta_down, p.eta_down, -1.0});
      break;
  }
  LevyMeasure m(std::move(pieces));
  const double gamma = gamma_for_mean(m, p.mean);
  return {p.sigma, gamma, std::move(m)};
}

LevyTriplet one_sided_triplet(const OneSidedParams& p) {
  require(p.sigma >= 0.0, "one_sided: sigma must be >= 0");
  LevyMeasure m({{p.side, p.weight, p.decay, p.index}});
  const double gamma = gamma_for_mean(m, p.mean);
  return {p.sigma, gamma, std::move(m)};
}

LevyTriplet composite_triplet(const CompositeParams& p) {
  require(p.sigma >= 0.0, "composite: sigma must be >= 0");
  LevyMeasure m(p.pieces);
  const double gamma = gamma_for_mean(m, p.mean);
  return {p.sigma, gamma, std::move(m)};
}

JumpLaw mirror(JumpLaw law) {
  switch (law) {
    case JumpLaw::exponential_up:
      return JumpLaw::exponential_down;
    case JumpLaw::exponential_down:
      return JumpLaw::exponential_up;
    default:
      return law;
  }
}

}  // namespace

double LevyTriplet::finite_variation_drift() const { return gamma - measure.first_moment_annulus(0.0, 1.0); }

void validate_triplet(const LevyTriplet& t) {
  require(t.sigma >= 0.0 && std::isfinite(t.sigma), "triplet: sigma must be finite and >= 0");
  require(std::isfinite(t.gamma), "triplet: gamma must be finite");
  const auto mass = t.measure.total_mass();
  if (mass && t.sigma == 0.0) {
    const double drift = t.finite_variation_drift();
    require(drift != 0.0, "triplet: compound Poisson process (finite Levy measure, sigma = 0, zero drift)");
  }
  if (t.sigma == 0.0 && t.measure.empty() && t.gamma == 0.0)
    throw SpecError("triplet: degenerate zero process");
}

LevyTriplet triplet_of(const FamilyParams& p) {
  return std::visit(overloaded{
                        [](const StableParams& s) { return stable_triplet(s); },
                        [](const CgmyParams& s) { return cgmy_triplet(s); },
                        [](const BrownianJumpsParams& s) { return brownian_jumps_triplet(s); },
                        [](const OneSidedParams& s) { return one_sided_triplet(s); },
                        [](const CompositeParams& s) { return composite_triplet(s); },
                        [](const RawTripletParams& s) {
                          return LevyTriplet{s.sigma, s.gamma, LevyMeasure(s.pieces)};
                        },
                    },
                    p);
}

ProcessSpec::ProcessSpec(FamilyParams params, std::string label)
    : ProcessSpec(params, triplet_of(params), std::move(label)) {}

ProcessSpec::ProcessSpec(FamilyParams params, LevyTriplet triplet, std::string label)
    : params_(std::move(params)), triplet_(std::move(triplet)), label_(std::move(label)) {
  validate_triplet(triplet_);
  validate_measure(triplet_.measure);
  if (label_.empty()) label_ = family();
}

ProcessSpec ProcessSpec::stable(double alpha, double beta, double scale) {
  return ProcessSpec(StableParams{alpha, beta, scale});
}
ProcessSpec ProcessSpec::brownian(double sigma) {
  require(sigma > 0.0, "brownian: sigma must be positive");
  return ProcessSpec(StableParams{2.0, 0.0, sigma * sigma}, "brownian");
}
ProcessSpec ProcessSpec::cgmy(CgmyParams p) { return ProcessSpec(p); }
ProcessSpec ProcessSpec::brownian_with_jumps(BrownianJumpsParams p) { return ProcessSpec(p); }
ProcessSpec ProcessSpec::one_sided(OneSidedParams p) { return ProcessSpec(p); }
ProcessSpec ProcessSpec::composite(CompositeParams p) { return ProcessSpec(std::move(p)); }
ProcessSpec ProcessSpec::raw(LevyTriplet t) {
  RawTripletParams p{t.sigma, t.gamma, {t.measure.pieces().begin(), t.measure.pieces().end()}};
  return ProcessSpec(std::move(p));
}

std::string ProcessSpec::family() const {
  return std::visit(overloaded{
                        [](const StableParams&) { return std::string("stable"); },
                        [](const CgmyParams&) { return std::string("cgmy"); },
                        [](const BrownianJumpsParams&) { return std::string("brownian_jumps"); },
                        [](const OneSidedParams&) { return std::string("one_sided"); },
                        [](const CompositeParams&) { return std::string("composite"); },
                        [](const RawTripletParams&) { return std::string("raw"); },
                    },
                    params_);
}

bool ProcessSpec::has_closed_form_psi() const { return !std::holds_alternative<RawTripletParams>(params_); }

std::optional<std::complex<double>> ProcessSpec::closed_form_psi(double xi) const {
  using C = std::complex<double>;
  if (!has_closed_form_psi()) return std::nullopt;
  if (const auto* s = std::get_if<StableParams>(&params_)) {
    if (xi == 0.0) return C{};
    const double ax = std::abs(xi);
    if (s->alpha == 2.0) return C(s->scale * xi * xi, 0.0);
    if (s->alpha == 1.0) return C(s->scale * ax, 0.0);
    const double mag = s->scale * std::pow(ax, s->alpha);
    const double skew = s->beta * std::tan(0.5 * std::numbers::pi * s->alpha) * (xi > 0 ? 1.0 : -1.0);
    return C(mag, -mag * skew);
  }
  const auto& t = triplet_;
  return C(t.sigma * t.sigma * xi * xi, -t.gamma * xi) + t.measure.exponent(xi);
}

ProcessSpec ProcessSpec::dual() const {
  FamilyParams p = std::visit(
      overloaded{
          [](StableParams s) -> FamilyParams {
            s.beta = -s.beta;
            return s;
          },
          [](CgmyParams s) -> FamilyParams {
            std::swap(s.c_plus, s.c_minus);
            std::swap(s.g, s.m);
            s.mean = -s.mean;
            return s;
          },
          [](BrownianJumpsParams s) -> FamilyParams {
            s.law = mirror(s.law);
            std::swap(s.eta_up, s.eta_down);
            s.p_up = 1.0 - s.p_up;
            s.mean = -s.mean;
            return s;
          },
          [](OneSidedParams s) -> FamilyParams {
            s.side = opposite(s.side);
            s.mean = -s.mean;
            return s;
          },
          [](CompositeParams s) -> FamilyParams {
            for (auto& piece : s.pieces) piece.side = opposite(piece.side);
            s.mean = -s.mean;
            return s;
          },
          [](RawTripletParams s) -> FamilyParams {
            for (auto& piece : s.pieces) piece.side = opposite(piece.side);
            s.gamma = -s.gamma;
            return s;
          },
      },
      params_);
  std::string label = label_.rfind("dual:", 0) == 0 ? label_.substr(5) : "dual:" + label_;
  return ProcessSpec(std::move(p), std::move(label));
}

bool ProcessSpec::symmetric() const { return triplet_.gamma == 0.0 && triplet_.measure.symmetric(); }

std::optional<double> ProcessSpec::stable_alpha() const {
  if (const auto* s = std::get_if<StableParams>(&params_)) return s->alpha;
  return std::nullopt;
}

std::optional<double> ProcessSpec::stable_positivity() const {
  const auto* s = std::get_if<StableParams>(&params_);
  if (!s) return std::nullopt;
  if (s->alpha == 2.0 || s->alpha == 1.0) return 0.5;
  return 0.5 + std::atan(s->beta * std::tan(0.5 * std::numbers::pi * s->alpha)) / (std::numbers::pi * s->alpha);
}

}  // namespace levy
