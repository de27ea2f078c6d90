#include "levy/harness/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "levy/error.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/quadrature.hpp"
#include "levy/spectral/spectral.hpp"

namespace levy {

namespace {

ClaimResult from_reports(std::string id, std::vector<BoundReport> reports) {
  ClaimResult r;
  r.id = std::move(id);
  r.verdict = Verdict::pass;
  for (const auto& rep : reports) {
    if (rep.verdict == Verdict::fail) {
      r.verdict = Verdict::fail;
      r.reason += (r.reason.empty() ? "" : "; ") + rep.id + ": " + (rep.reason.empty() ? "out of band" : rep.reason);
    } else if (rep.verdict == Verdict::skipped && reports.size() == 1) {
      r.verdict = Verdict::skipped;
      r.reason = rep.reason;
    } else if (rep.verdict == Verdict::inconclusive && r.verdict == Verdict::pass) {
      r.verdict = Verdict::inconclusive;
      r.reason = rep.id + ": " + rep.reason;
    }
  }
  r.reports = std::move(reports);
  return r;
}

double lookup(const ExperimentConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.bands.find(key);
  return it == cfg.bands.end() ? fallback : it->second;
}

std::vector<double> within(std::span<const double> v, double lo, double hi) {
  std::vector<double> out;
  for (double x : v)
    if (x >= lo && x <= hi) out.push_back(x);
  return out;
}

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::log(x[i]);
    const double b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ClaimResult theorem_main(ClaimContext& ctx) {
  const auto& cfg = ctx.config();
  const auto& m = ctx.model();
  const auto xs = ctx.start_points();
  const auto& est = ctx.exit_estimates();
  const double lower = lookup(cfg, "theorem-main-lower", 0.01);
  BoundReport rep;
  rep.id = "theorem-main";
  rep.description = "C V^(x) V(R-x) <= E^x tau(0,R) <= 2 V^(x) V(R-x)";
  rep.input_names = {"x", "R", "mean", "std_error", "censored_fraction"};
  bool upper_ok = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& e = est[i];
    rep.add({xs[i], cfg.R, e.mean, e.std_error, e.censored_fraction}, e.mean, m.V_hat(xs[i]) * m.V(cfg.R - xs[i]));
    const double rel = e.mean > 0.0 ? e.std_error / e.mean : 0.0;
    upper_ok = upper_ok && rep.rows.back().ratio <= 2.0 * (1.0 + 3.0 * rel);
  }
  rep.summarize();
  rep.band_lo = lower;
  rep.band_hi = 2.0;
  rep.metrics["c"] = rep.min_ratio;
  rep.metrics["upper"] = rep.max_ratio;
  if (!upper_ok) {
    rep.verdict = Verdict::fail;
    rep.reason = "ratio above 2 beyond three standard errors";
  } else if (!(rep.min_ratio >= lower)) {
    rep.verdict = Verdict::fail;
    rep.reason = "lower ratio below " + detail::sci(lower);
  } else {
    rep.verdict = Verdict::pass;
  }
  auto r = from_reports("theorem-main", {rep});
  for (const auto& e : est) r.details["estimates"].push_back(to_json(e));
  return r;
}

ClaimResult exit_upper(ClaimContext& ctx) {
  const auto& m = ctx.model();
  const auto xs = ctx.start_points();
  const auto& est = ctx.exit_estimates();
  auto r = from_reports("exit-upper", {exit_upper_report(m.V, m.V_hat, ctx.config().R, xs, est)});
  for (const auto& e : est) r.details["estimates"].push_back(to_json(e));
  return r;
}

ClaimResult cdf_sup_inf(ClaimContext& ctx) {
  const auto& cfg = ctx.config();
  const auto& conc = ctx.concentration();
  const auto& m = ctx.model();
  const double band = cfg.band("cdf-sup-inf");
  BoundReport sup, inf, sat;
  sup.id = "cdf-sup";
  sup.description = "P(sup X < x) ~ min{1, V(x) / V(h^-1(1/t))}";
  inf.id = "cdf-inf";
  inf.description = "P(inf X > -x) ~ min{1, V^(x) / V^(h^-1(1/t))}";
  sat.id = "cdf-saturation";
  sat.description = "P(sup X < x) and P(inf X > -x) reach 1 within 3 se for x >= 10 h^-1(1/t)";
  for (auto* rep : {&sup, &inf}) rep->input_names = {"t", "x", "multiple", "std_error"};
  sat.input_names = {"t", "x", "multiple", "std_error", "side"};
  bool saturated = true;
  for (double t : cfg.grids.t) {
    const double s = conc.h_inv(1.0 / t);
    std::vector<double> xs;
    for (double k : cfg.grids.sup_x) xs.push_back(k * s);
    const auto up = sup_cdf(cfg.spec, t, xs, cfg.plan);
    const auto down = inf_cdf(cfg.spec, t, xs, cfg.plan);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double k = cfg.grids.sup_x[i];
      sup.add({t, xs[i], k, up[i].std_error}, up[i].mean, std::min(1.0, m.V(xs[i]) / m.V(s)));
      inf.add({t, xs[i], k, down[i].std_error}, down[i].mean, std::min(1.0, m.V_hat(xs[i]) / m.V_hat(s)));
      if (k >= 10.0) {
        for (int side = 0; side < 2; ++side) {
          const auto& e = side == 0 ? up[i] : down[i];
          sat.add({t, xs[i], k, e.std_error, double(side)}, e.mean, 1.0);
          saturated = saturated && 1.0 - e.mean <= 3.0 * e.std_error;
        }
      }
    }
  }
  for (auto* rep : {&sup, &inf}) {
    rep->summarize();
    rep->judge_spread(band);
  }
  sat.band_lo = 1.0;
  sat.band_hi = 1.0;
  if (sat.rows.empty()) {
    sat.verdict = Verdict::skipped;
    sat.reason = "no grid level at or above 10 h^-1(1/t)";
  } else {
    sat.summarize();
    sat.verdict = saturated ? Verdict::pass : Verdict::fail;
    if (!saturated) sat.reason = "probability short of 1 by more than 3 standard errors";
  }
  auto r = from_reports("cdf-sup-inf", {sup, inf, sat});
  r.details["spread_sup"] = sup.spread();
  r.details["spread_inf"] = inf.spread();
  return r;
}

ClaimResult product_bound(ClaimContext& ctx) {
  return from_reports("product-bound",
                      {product_bound_report(ctx.model(), ctx.config().grids.r, ctx.config().band("product-bound"))});
}

ClaimResult kappa_identity_claim(ClaimContext& ctx) {
  return from_reports("kappa-identity",
                      {kappa_identity(ctx.time_ladder(), ctx.time_dual_ladder(), ctx.config().grids.z,
                                      lookup(ctx.config(), "kappa-identity", 1e-3))});
}

ClaimResult kappa_scaling(ClaimContext& ctx) {
  auto z = within(ctx.config().grids.z, 1.0, std::numeric_limits<double>::infinity());
  if (z.empty()) z = {1.0, 10.0, 100.0};
  const std::vector<double> multipliers = {1.0, 10.0, 100.0, 1000.0};
  return from_reports("kappa-scaling",
                      {kappa_scaling_report(ctx.time_ladder(), z, multipliers, ctx.config().band("kappa-scaling"))});
}

ClaimResult kappa_est(ClaimContext& ctx) {
  const auto& cfg = ctx.config();
  std::vector<double> lambdas;
  for (double l : cfg.grids.lambda)
    if (l < ctx.concentration().h_upper()) lambdas.push_back(l);
  return from_reports("kappa-est", {kappa_est_report(ctx.model(), lambdas, cfg.band("kappa-est"))});
}

ClaimResult v_scaling(ClaimContext& ctx) {
  const double alpha = std::min(2.0, ctx.gates().scaling_index);
  return from_reports("v-scaling", {V_scaling_report(ctx.model().V, alpha, ctx.config().grids.r,
                                                     lookup(ctx.config(), "v-scaling", 1e-2))});
}

ClaimResult pruitt(ClaimContext& ctx) {
  const auto& cfg = ctx.config();
  return from_reports("pruitt", {pruitt_report(cfg.spec, ctx.concentration(), cfg.grids.pruitt_t, cfg.grids.pruitt_r,
                                               cfg.plan, cfg.band("pruitt"))});
}

ClaimResult im_re(ClaimContext& ctx) {
  const auto& xi = ctx.config().grids.xi;
  return from_reports("im-re", {im_re_domination(ctx.spec(), ctx.gates().zero_mean, xi)});
}

ClaimResult ex3(ClaimContext& ctx) {
  return from_reports("ex3", {ex3_report(ctx.spec(), ctx.config().grids.r, ctx.config().band("ex3"))});
}

ClaimResult condition_claim(const std::string& id, const ConditionResult& c) {
  ClaimResult r;
  r.id = id;
  r.details = to_json(c);
  if (c.verdict == Condition::hypothesis_not_met) {
    r.verdict = Verdict::skipped;
    r.reason = c.reason.empty() ? "tail-domination hypothesis not met" : c.reason;
  } else if (c.verdict == Condition::inconclusive) {
    r.verdict = Verdict::inconclusive;
    r.reason = "dyadic partial integrals neither settle nor grow clearly";
  } else if (c.slope_consistent) {
    r.verdict = Verdict::pass;
  } else {
    r.verdict = Verdict::fail;
    r.reason = "integral " + to_string(c.verdict) + " but V slope is " + detail::sci(c.v_slope);
  }
  BoundReport rep;
  rep.id = id;
  rep.description = "dyadic partial integrals";
  rep.input_names = {"endpoint"};
  for (std::size_t i = 0; i < c.endpoints.size(); ++i) rep.add({c.endpoints[i]}, c.partial_integrals[i], 1.0);
  rep.summarize();
  rep.verdict = r.verdict;
  rep.metrics["increment_ratio"] = c.increment_ratio;
  rep.metrics["v_slope"] = c.v_slope;
  r.reports.push_back(std::move(rep));
  return r;
}

ClaimResult creeping(ClaimContext& ctx) {
  return condition_claim("creeping", creeping_condition(ctx.model(), lookup(ctx.config(), "creeping", 0.05)));
}

ClaimResult linearity_large(ClaimContext& ctx) {
  return condition_claim("linearity-large",
                         linearity_large_condition(ctx.model(), lookup(ctx.config(), "linearity-large", 0.05)));
}

ClaimResult vigon(ClaimContext& ctx) {
  return from_reports("vigon-consistency", {ladder_levy_consistency(ctx.model(), ctx.config().grids.lambda)});
}

ClaimResult closing_example(ClaimContext& ctx) {
  const auto& cfg = ctx.config();
  const auto& nu = cfg.spec.triplet().measure;
  const auto direct = check_tail_domination(nu);
  const auto mirrored = check_tail_domination(nu.reflected());
  ClaimResult r;
  r.id = "closing-example";
  auto hyp = [](const TailDomination& d) {
    return nlohmann::json{{"satisfied", d.satisfied},
                          {"inner_max", d.inner_max},
                          {"outer_max", d.outer_max},
                          {"scaling_index", d.scaling_index},
                          {"reason", d.reason}};
  };
  r.details["hypothesis"] = {{"process", hyp(direct)}, {"dual", hyp(mirrored)}};
  if (!direct.satisfied && !mirrored.satisfied) {
    r.verdict = Verdict::skipped;
    r.reason = "tail-domination hypothesis fails for the process and its dual (" + direct.reason + ")";
    return r;
  }
  // When the process satisfies the hypothesis its ascending ladder creeps, V(r) ~ r and
  // V^(x) ~ 1/(x h(x)); for the dual orientation the roles of x and R - x swap.
  const bool up = direct.satisfied;
  r.details["orientation"] = up ? "process" : "dual";
  const auto& conc = ctx.concentration();
  const double R = cfg.R;
  const auto xs = ctx.start_points();
  const auto& est = ctx.exit_estimates();
  auto formula = [&](double x, bool process_side) {
    return process_side ? (R - x) / (x * conc.h(x)) : x / ((R - x) * conc.h(R - x));
  };
  BoundReport rep, literal;
  rep.id = "closing-example";
  rep.description = up ? "E^x tau ~ (R-x) / (x h(x))" : "E^x tau ~ x / ((R-x) h(R-x))";
  literal.id = "closing-example-literal";
  literal.description = "E^x tau against x / ((R-x) h(R-x)) (informational)";
  for (auto* b : {&rep, &literal}) b->input_names = {"x", "R", "std_error"};
  std::vector<double> d_near, mean_near;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rep.add({xs[i], R, est[i].std_error}, est[i].mean, formula(xs[i], up));
    literal.add({xs[i], R, est[i].std_error}, est[i].mean, formula(xs[i], false));
    const double d = up ? R - xs[i] : xs[i];
    if (d <= 0.1 * R) {
      d_near.push_back(d);
      mean_near.push_back(est[i].mean);
    }
  }
  rep.summarize();
  rep.judge_spread(cfg.band("closing-example"));
  literal.summarize();
  literal.band_hi = cfg.band("closing-example");
  literal.verdict = Verdict::inconclusive;
  literal.reason = "informational";
  literal.metrics["spread"] = literal.spread();
  if (d_near.size() >= 2) {
    const double slope = loglog_slope(d_near, mean_near);
    rep.metrics["end_slope"] = slope;
    if (std::abs(slope - 1.0) > 0.1 && rep.verdict == Verdict::pass) {
      rep.verdict = Verdict::fail;
      rep.reason = "exit time does not vanish linearly at the boundary (slope " + detail::sci(slope) + ")";
    }
  } else {
    rep.reason = "fewer than two grid points within R/10 of the linear end; slope not fitted";
  }
  rep.metrics["spread"] = rep.spread();
  const auto& m = ctx.model();
  const auto& lin = up ? m.V : m.V_hat;
  r.details["linear_renewal_slope_small"] = lin.slope(1e-4, 1e-3);
  r.details["linear_renewal_slope_large"] = lin.slope(1e3, 1e4);
  Verdict v = rep.verdict;
  std::string reason = rep.reason;
  r.reports = {rep, literal};
  r.verdict = v;
  r.reason = v == Verdict::fail ? reason : "";
  for (const auto& e : est) r.details["estimates"].push_back(to_json(e));
  return r;
}

double lower_truncated_moment(const LevyMeasure& nu, double a) {
  // \int_0^a u nu(-inf,-u) du with u = a e^{-s}.
  auto f = [&](double s) {
    const double u = a * std::exp(-s);
    return u * u * nu.lower_tail(u);
  };
  return quad::integrate(f, 0.0, 80.0, quad::Tolerance{0.0, 1e-9, 2000}, std::vector<double>{1.0, 5.0, 20.0},
                         "tail-domination moment")
      .value;
}

}  // namespace

TailDomination check_tail_domination(const LevyMeasure& nu, double beta) {
  TailDomination d;
  for (double r : log_grid(1e-6, 1e6, 121)) {
    const double upper = nu.upper_tail(r);
    const double lower = nu.lower_tail(r);
    if (upper <= 0.0) continue;
    if (lower <= 0.0) {
      d.reason = "upward tail positive where the downward tail vanishes (r = " + detail::sci(r) + ")";
      return d;
    }
    const double q = upper * std::pow(std::log(r + 1.0 / r), 1.0 + beta) / lower;
    auto& slot = r >= 1e-2 && r <= 1e2 ? d.inner_max : d.outer_max;
    slot = std::max(slot, q);
  }
  if (d.outer_max > 2.0 * d.inner_max) {
    d.reason = "domination ratio grows away from r = 1 (" + detail::sci(d.outer_max) + " vs " +
               detail::sci(d.inner_max) + ")";
    return d;
  }
  const auto grid = log_grid(1e-3, 1e3, 25);
  for (double x : grid)
    if (!(lower_truncated_moment(nu, 1.0 / x) > 0.0)) {
      d.reason = "no downward jumps";
      return d;
    }
  d.scaling_index = lower_scaling_index(
      [&](double x) { return x * x * lower_truncated_moment(nu, 1.0 / x); }, grid);
  if (!(d.scaling_index > 1.0)) {
    d.reason = "downward truncated moment scales with index " + detail::sci(d.scaling_index) + " <= 1";
    return d;
  }
  d.satisfied = true;
  return d;
}

nlohmann::json to_json(const ClaimResult& r) {
  nlohmann::json j{{"id", r.id}, {"verdict", to_string(r.verdict)}, {"reason", r.reason}, {"details", r.details}};
  j["reports"] = nlohmann::json::array();
  for (const auto& rep : r.reports) j["reports"].push_back(to_json(rep));
  return j;
}

nlohmann::json to_json(const Gates& g) {
  return {{"mean", g.mean ? nlohmann::json(*g.mean) : nlohmann::json(nullptr)},
          {"zero_mean", g.zero_mean},
          {"scaling_index", g.scaling_index},
          {"wlsc_above_one", g.wlsc_above_one},
          {"unbounded_variation", g.unbounded_variation}};
}

ClaimContext::ClaimContext(const ExperimentConfig& cfg) : cfg_(cfg), gates_(evaluate_gates(cfg.spec)) {}

const ConcentrationProfile& ClaimContext::concentration() {
  if (!conc_) conc_ = std::make_unique<ConcentrationProfile>(cfg_.spec);
  return *conc_;
}

const FluctuationModel& ClaimContext::model() {
  if (!model_) model_ = std::make_unique<FluctuationModel>(cfg_.spec);
  return *model_;
}

const LadderExponent& ClaimContext::time_ladder() {
  if (model_) return model_->ladder;
  if (!ladder_) {
    LadderOptions opt;
    opt.space_axis = false;
    ladder_ = std::make_unique<LadderExponent>(cfg_.spec, opt);
  }
  return *ladder_;
}

const LadderExponent& ClaimContext::time_dual_ladder() {
  if (model_) return model_->dual_ladder;
  if (!dual_ladder_) {
    LadderOptions opt;
    opt.space_axis = false;
    dual_ladder_ = std::make_unique<LadderExponent>(cfg_.spec.dual(), opt);
  }
  return *dual_ladder_;
}

std::vector<double> ClaimContext::start_points() const {
  std::vector<double> xs;
  for (double f : cfg_.grids.x) xs.push_back(f * cfg_.R);
  return xs;
}

const std::vector<MCEstimate>& ClaimContext::exit_estimates() {
  if (!exit_) exit_ = exit_time_grid(cfg_.spec, start_points(), cfg_.R, cfg_.plan);
  return *exit_;
}

const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> registry = {
      {"theorem-main", "two-sided exit-time estimate by V^(x) V(R-x)", true, true, theorem_main},
      {"cdf-sup-inf", "distribution of the supremum and infimum via V", true, true, cdf_sup_inf},
      {"exit-upper", "E^x tau(0,R) <= V^(x) V(R)", false, false, exit_upper},
      {"product-bound", "V(r) V^(r) comparable to 1/h(r)", false, false, product_bound},
      {"kappa-identity", "kappa(z,0) kappa^(z,0) = z", false, false, kappa_identity_claim},
      {"kappa-scaling", "power scaling of kappa(z,0)", false, false, kappa_scaling},
      {"kappa-est", "kappa(l,0) comparable to 1/V(h^-1(l))", true, true, kappa_est},
      {"v-scaling", "V(lx) >= C l^(alpha-1) V(x)", true, true, v_scaling},
      {"pruitt", "maximal inequalities via h and b_r", false, false, pruitt},
      {"im-re", "|Im psi| <= C Re psi", false, true, im_re},
      {"ex3", "\\int (1 - cos xy) Re(1/psi(y)) dy comparable to 1/(x h(x))", true, true, ex3},
      {"creeping", "small-x linearity of V", true, true, creeping},
      {"linearity-large", "large-x linearity of V", true, true, linearity_large},
      {"vigon-consistency", "kappa(0,l) rebuilt from nu and V^", false, false, vigon},
      {"closing-example", "exit time with a linear renewal function", true, true, closing_example},
  };
  return registry;
}

const ClaimInfo& find_claim(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw ConfigError("unknown claim '" + id + "'");
}

std::vector<std::string> claim_ids() {
  std::vector<std::string> ids;
  for (const auto& c : claim_registry()) ids.push_back(c.id);
  return ids;
}

std::string gate_failure(const ClaimInfo& claim, const Gates& g) {
  std::string out;
  auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
  if (claim.needs_zero_mean && !g.zero_mean)
    add(g.mean ? "E X1 != 0 (E X1 = " + detail::sci(*g.mean) + ")" : "E X1 undefined");
  if (claim.needs_wlsc && !g.wlsc_above_one)
    add("WLSC alpha>1 gate failed (lower scaling index " + detail::sci(g.scaling_index) + ")");
  return out;
}

ExperimentResult run_claims(const ExperimentConfig& cfg) {
  cfg.validate();
  for (const auto& id : cfg.claims) find_claim(id);
  ClaimContext ctx(cfg);
  ExperimentResult out;
  out.gates = ctx.gates();
  for (const auto& id : cfg.claims) {
    const auto& info = find_claim(id);
    const auto start = std::chrono::steady_clock::now();
    ClaimResult r;
    if (const auto why = gate_failure(info, ctx.gates()); !why.empty()) {
      r.id = id;
      r.verdict = Verdict::skipped;
      r.reason = why;
    } else {
      try {
        r = info.check(ctx);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        r = ClaimResult{};
        r.id = id;
        r.verdict = Verdict::fail;
        r.reason = std::string("error: ") + e.what();
      }
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.verdict == Verdict::fail) out.exit_code = 1;
    out.claims.push_back(std::move(r));
  }
  return out;
}

nlohmann::json summary_json(const ExperimentConfig& cfg, const ExperimentResult& r) {
  nlohmann::json j;
  j["spec"] = spec_to_json(cfg.spec);
  j["R"] = cfg.R;
  j["plan"] = to_json(cfg.plan);
  j["gates"] = to_json(r.gates);
  j["claims"] = nlohmann::json::array();
  for (const auto& c : r.claims) j["claims"].push_back(to_json(c));
  j["exit_code"] = r.exit_code;
  return j;
}

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  auto open = [](const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw Error("cannot write " + p.string());
    return os;
  };
  {
    auto os = open(cfg.output_dir / "result.json");
    os << summary_json(cfg, r).dump(2) << '\n';
  }
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& c : r.claims) {
    timing[c.id] = c.wall_time;
    for (const auto& rep : c.reports) {
      const auto name = rep.id == c.id ? c.id : c.id + "." + rep.id;
      auto os = open(cfg.output_dir / (name + ".csv"));
      write_csv(os, rep);
    }
  }
  auto os = open(cfg.output_dir / "timing.json");
  os << timing.dump(2) << '\n';
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  auto r = run_claims(cfg);
  write_outputs(cfg, r);
  return r;
}

}  // namespace levy
