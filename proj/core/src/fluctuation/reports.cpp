#include "levy/fluctuation/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy/error.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/interp.hpp"
#include "levy/numerics/quadrature.hpp"

namespace levy {

namespace {

std::vector<double> unit_cuts(double a, double b) {
  std::vector<double> cuts;
  for (double c = std::ceil(a); c < b; c += 1.0) cuts.push_back(c);
  return cuts;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Partial integrals over successive dyadic pieces between consecutive endpoints,
// accumulated from `start`.
std::vector<double> dyadic_partials(const std::function<double(double)>& f, double start,
                                    std::span<const double> endpoints) {
  std::vector<double> out;
  double acc = 0.0;
  double prev = start;
  for (double e : endpoints) {
    const double a = std::min(prev, e);
    const double b = std::max(prev, e);
    // u = log y; integrand f(y) dy = f(e^u) e^u du.
    auto g = [&](double u) {
      const double y = std::exp(u);
      return f(y) * y;
    };
    acc += quad::integrate(g, std::log(a), std::log(b), {0.0, 1e-10, 2000}, {}, "dyadic partial integral").value;
    out.push_back(acc);
    prev = e;
  }
  return out;
}

// Median ratio of consecutive increments over the last `window` pieces. Zero
// increments (vanishing integrand) count as ratio 0.
double increment_ratio(std::span<const double> partials, std::size_t window = 10) {
  std::vector<double> inc;
  for (std::size_t i = 1; i < partials.size(); ++i) inc.push_back(partials[i] - partials[i - 1]);
  std::vector<double> ratios;
  const std::size_t first = inc.size() > window + 1 ? inc.size() - window - 1 : 0;
  for (std::size_t i = first; i + 1 < inc.size(); ++i)
    ratios.push_back(inc[i] > 0.0 ? inc[i + 1] / inc[i] : 0.0);
  return median(ratios);
}

Condition classify(double ratio) {
  if (ratio < 0.9) return Condition::holds;
  if (ratio >= 0.95) return Condition::fails;
  return Condition::inconclusive;
}

}  // namespace

FluctuationModel::FluctuationModel(const ProcessSpec& s, const RenewalOptions& opt, const LadderOptions& lopt)
    : spec(s),
      conc(s),
      ladder(s, lopt),
      dual_ladder(s.dual(), lopt),
      V(renewal_V(ladder, opt)),
      V_hat(renewal_V(dual_ladder, opt)) {}

RenewalFunction stable_renewal(const ProcessSpec& spec, double kappa_at_one, std::span<const double> grid) {
  const auto alpha = spec.stable_alpha();
  const auto rho = spec.stable_positivity();
  if (!alpha || !rho) throw Error("stable_renewal: spec is not strictly stable");
  const double a = *alpha * *rho;
  const double c = 1.0 / (kappa_at_one * std::tgamma(1.0 + a));
  return RenewalFunction::from_function(grid, [&](double x) { return c * std::pow(x, a); }, "stable-closed-form");
}

RenewalFunction symmetric_sqrt_h(const ConcentrationProfile& conc, std::span<const double> grid) {
  return RenewalFunction::from_function(grid, [&](double r) { return 1.0 / std::sqrt(conc.h(r)); },
                                        "symmetric-sqrt-h");
}

BoundReport kappa_identity(const LadderExponent& ladder, const LadderExponent& dual, std::span<const double> z_grid,
                           double tol) {
  BoundReport rep;
  rep.id = "kappa-identity";
  rep.description = "kappa(z,0) kappa^(z,0) = z";
  rep.input_names = {"z"};
  for (double z : z_grid) rep.add({z}, ladder.kappa_time(z) * dual.kappa_time(z), z);
  rep.judge_within(1.0 - tol, 1.0 + tol);
  return rep;
}

BoundReport kappa_scaling_report(const LadderExponent& ladder, std::span<const double> z_grid,
                                 std::span<const double> lambda_grid, double max_c) {
  BoundReport rep;
  rep.id = "kappa-scaling";
  rep.description = "c^-1 l^(1-rho) kappa(z,0) <= kappa(lz,0) <= c l^rho kappa(z,0)";
  rep.input_names = {"z", "lambda", "lower"};
  const double eta = ladder.positivity().eta_lower();
  const double rho = 1.0 - eta;
  double c = 0.0;
  for (double z : z_grid) {
    if (z < 1.0) continue;
    const double kz = ladder.kappa_time(z);
    for (double l : lambda_grid) {
      if (l < 1.0) continue;
      const double klz = ladder.kappa_time(l * z);
      rep.add({z, l, 0.0}, klz, std::pow(l, rho) * kz);
      rep.add({z, l, 1.0}, std::pow(l, 1.0 - rho) * kz, klz);
      c = std::max({c, rep.rows[rep.rows.size() - 2].ratio, rep.rows.back().ratio});
    }
  }
  rep.summarize();
  rep.metrics["rho"] = rho;
  rep.metrics["eta_lower"] = eta;
  rep.metrics["c"] = c;
  rep.band_lo = 0.0;
  rep.band_hi = max_c;
  rep.verdict = !rep.rows.empty() && std::isfinite(c) && c <= max_c ? Verdict::pass : Verdict::fail;
  return rep;
}

BoundReport product_bound_report(const FluctuationModel& m, std::span<const double> r_grid, double band) {
  BoundReport rep;
  rep.id = "product-bound";
  rep.description = "V(r) V^(r) comparable to 1/h(r); (h + |b_r|/r) V V^ bounded below";
  rep.input_names = {"r"};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double r : r_grid) {
    const double h = m.conc.h(r);
    const double vv = m.V(r) * m.V_hat(r);
    rep.add({r}, vv, 1.0 / h);
    const double d = (h + std::abs(m.conc.b(r)) / r) * vv;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  rep.judge_spread(band);
  rep.metrics["spread_drift"] = hi / lo;
  rep.metrics["min_drift_ratio"] = lo;
  if (!(hi / lo < band)) rep.verdict = Verdict::fail;
  return rep;
}

BoundReport kappa_est_report(const FluctuationModel& m, std::span<const double> lambda_grid, double band) {
  BoundReport rep;
  rep.id = "kappa-est";
  rep.description = "kappa(l,0) comparable to 1/V(h^-1(l))";
  rep.input_names = {"lambda"};
  for (double l : lambda_grid) rep.add({l}, m.ladder.kappa_time(l), 1.0 / m.V(m.conc.h_inv(l)));
  rep.judge_spread(band);
  return rep;
}

BoundReport V_scaling_report(const RenewalFunction& V, double alpha, std::span<const double> x_grid, double floor) {
  BoundReport rep;
  rep.id = "v-scaling";
  rep.description = "V(l x) >= C l^(alpha-1) V(x), l >= 1";
  rep.input_names = {"x", "lambda"};
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    for (std::size_t j = i + 1; j < x_grid.size(); ++j) {
      const double l = x_grid[j] / x_grid[i];
      rep.add({x_grid[i], l}, V(x_grid[j]), std::pow(l, alpha - 1.0) * V(x_grid[i]));
    }
  rep.judge_within(floor, std::numeric_limits<double>::infinity());
  rep.metrics["alpha"] = alpha;
  return rep;
}

BoundReport ladder_levy_consistency(const FluctuationModel& m, std::span<const double> lambda_grid, double lo,
                                    double hi) {
  BoundReport rep;
  rep.id = "vigon-consistency";
  rep.description = "kappa(0,l) rebuilt from nu and V^ versus the ladder exponent";
  rep.input_names = {"lambda"};
  const auto& measure = m.spec.triplet().measure;
  const bool no_upward = measure.one_sided(Side::negative);
  if (no_upward && m.spec.triplet().sigma == 0.0) {
    rep.verdict = Verdict::skipped;
    rep.reason = "no upward jumps and no Gaussian part";
    return rep;
  }
  // Upper tail of the ladder height Levy measure:
  //   eta(x) = \int_0^inf nu(x+y, inf) V^(dy) = \int_0^inf V^(y) nu(x+y) dy   (V^(0) = 0).
  auto eta_at = [&](double x) {
    auto f = [&](double u) {
      const double y = std::exp(u);
      return m.V_hat(y) * measure.density(x + y) * y;
    };
    const double a = std::log(x) - 35.0;
    const double b = std::log(x) + 45.0;
    return quad::integrate(f, a, b, {0.0, 1e-9, 4000}, unit_cuts(a, b), "eta tail").value;
  };
  std::vector<double> lx;
  std::vector<double> le;
  bool truncated = false;
  if (!no_upward) {
    for (double x : log_grid(1e-10, 1e6, 161)) {
      const double e = eta_at(x);
      if (!(e > 1e-280)) {
        truncated = true;
        break;
      }
      lx.push_back(std::log(x));
      le.push_back(std::log(e));
    }
  }
  const bool has_eta = lx.size() >= 2;
  MonotoneCubic eta_loglog;
  if (has_eta) eta_loglog = MonotoneCubic(lx, le);
  const double x_top = has_eta ? std::exp(lx.back()) : 0.0;
  auto eta = [&](double x) {
    if (!has_eta || (truncated && x > x_top)) return 0.0;
    return std::exp(eta_loglog(std::log(x)));
  };
  // J(l) = \int_0^inf e^{-l x} eta(x) dx, so kappa~(l) = delta l + l J(l).
  auto J = [&](double l) {
    if (!has_eta) return 0.0;
    const double x0 = std::exp(lx.front());
    auto f = [&](double u) {
      const double x = std::exp(u);
      return std::exp(-l * x) * eta(x) * x;
    };
    const double a = lx.front();
    const double b = std::log(60.0 / l);
    double v = b > a ? quad::integrate(f, a, b, {0.0, 1e-10, 4000}, unit_cuts(a, b), "ladder Laplace integral").value
                     : 0.0;
    // eta ~ x^{-p} below the table, p < 1.
    const double p = -(le[1] - le[0]) / (lx[1] - lx[0]);
    if (p < 1.0) v += eta(x0) * x0 / (1.0 - p);
    return v;
  };
  const double l_fit = 100.0 * *std::max_element(lambda_grid.begin(), lambda_grid.end());
  const double delta = std::max(0.0, (m.ladder.kappa_space(l_fit) - l_fit * J(l_fit)) / l_fit);
  for (double l : lambda_grid) rep.add({l}, delta * l + l * J(l), m.ladder.kappa_space(l));
  rep.judge_within(lo, hi);
  rep.metrics["drift"] = delta;
  rep.metrics["lambda_fit"] = l_fit;
  if (!has_eta) rep.reason = "no upward jumps: drift-only comparison";
  return rep;
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::holds:
      return "holds";
    case Condition::fails:
      return "fails";
    case Condition::inconclusive:
      return "inconclusive";
    case Condition::hypothesis_not_met:
      return "hypothesis-not-met";
  }
  return "unknown";
}

nlohmann::json to_json(const ConditionResult& r) {
  return nlohmann::json{{"id", r.id},
                        {"verdict", to_string(r.verdict)},
                        {"classification", to_string(r.classification)},
                        {"endpoints", r.endpoints},
                        {"partial_integrals", r.partial_integrals},
                        {"increment_ratio", r.increment_ratio},
                        {"v_slope", r.v_slope},
                        {"slope_consistent", r.slope_consistent},
                        {"hypothesis_ratio", r.hypothesis_ratio},
                        {"reason", r.reason}};
}

namespace {

ConditionResult integral_condition(const FluctuationModel& m, bool small, double slope_tol) {
  ConditionResult res;
  res.id = small ? "creeping" : "linearity-large";
  const auto& measure = m.spec.triplet().measure;
  auto f = [&](double y) { return measure.upper_tail(y) / (y * m.conc.h(y)); };
  for (int k = 4; k <= 24; ++k) res.endpoints.push_back(small ? std::ldexp(1.0, -k) : std::ldexp(1.0, k));
  res.partial_integrals = dyadic_partials(f, 1.0, res.endpoints);
  res.increment_ratio = increment_ratio(res.partial_integrals);
  res.classification = classify(res.increment_ratio);
  res.verdict = res.classification;
  const auto xs = m.V.x();
  res.v_slope = small ? m.V.slope(xs.front(), xs.front() * 10.0) : m.V.slope(xs.back() / 10.0, xs.back());
  const bool linear = std::abs(res.v_slope - 1.0) <= slope_tol;
  res.slope_consistent = (res.classification == Condition::holds) == linear &&
                         res.classification != Condition::inconclusive;
  return res;
}

}  // namespace

ConditionResult creeping_condition(const FluctuationModel& m, double slope_tol) {
  return integral_condition(m, true, slope_tol);
}

ConditionResult linearity_large_condition(const FluctuationModel& m, double slope_tol) {
  auto res = integral_condition(m, false, slope_tol);
  const auto& measure = m.spec.triplet().measure;
  // nu(z, inf) <= C nu(-inf, -z) for z >= 1: the ratio must not grow along z = 2^j.
  double front = 0.0;
  double back = 0.0;
  bool violated = false;
  for (int j = 0; j <= 24; ++j) {
    const double z = std::ldexp(1.0, j);
    const double up = measure.upper_tail(z);
    const double down = measure.lower_tail(z);
    double r = 0.0;
    if (up > 0.0) {
      if (down > 0.0) {
        r = up / down;
      } else {
        violated = true;
        r = std::numeric_limits<double>::infinity();
      }
    }
    (j <= 12 ? front : back) = std::max(j <= 12 ? front : back, r);
  }
  res.hypothesis_ratio = std::max(front, back);
  if (violated || back > 2.0 * front + 1e-300) {
    res.verdict = Condition::hypothesis_not_met;
    res.reason = violated ? "upper tail positive where lower tail vanishes" : "upper/lower tail ratio grows with z";
  }
  return res;
}

}  // namespace levy
