// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "levy/concentration/concentration.hpp"
#include "levy/error.hpp"
#include "levy/fluctuation/reports.hpp"
#include "levy/harness/config.hpp"
#include "levy/harness/harness.hpp"
#include "levy/model/exponent.hpp"
#include "levy/model/presets.hpp"
#include "levy/montecarlo/montecarlo.hpp"
#include "levy/numerics/grid.hpp"

using namespace levy;

namespace {

const std::vector<double> kFractions = {0.1, 0.25, 0.5, 0.75, 0.9};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const FluctuationModel& model(const std::string& name) {
  static std::map<std::string, std::unique_ptr<FluctuationModel>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<FluctuationModel>(preset(name));
  return *slot;
}

const std::vector<MCEstimate>& exit_estimates(const std::string& name, const SimPlan& plan) {
  static std::map<std::string, std::vector<MCEstimate>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, exit_time_grid(preset(name), kFractions, 1.0, plan)).first;
  return it->second;
}

SimPlan stable_plan() {
  SimPlan p;
  p.n_paths = 100000;
  p.dt = 2e-4;
  p.seed = 11;
  return p;
}

SimPlan brownian_plan() {
  SimPlan p;
  p.n_paths = 40000;
  p.dt = 1e-4;
  p.seed = 12;
  return p;
}

SimPlan cgmy_plan() {
  SimPlan p;
  p.n_paths = 20000;
  p.dt = 2e-4;
  p.eps = 5e-3;
  p.seed = 13;
  return p;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. Exit times of the symmetric 1.5-stable process against x^{a/2} (R-x)^{a/2} / Gamma(1+a).
Outcome stable_exit() {
  const auto& est = exit_estimates("stable-sym-1.5", stable_plan());
  double worst = 0.0;
  for (std::size_t i = 0; i < kFractions.size(); ++i) {
    const double x = kFractions[i];
    const double exact = std::pow(x * (1.0 - x), 0.75) / std::tgamma(2.5);
    worst = std::max(worst, std::abs(est[i].mean / exact - 1.0));
  }
  return {worst < 0.05, "max relative error " + fmt(worst) + " (limit 0.05)"};
}

// 2. Brownian exit times against x (R-x) / 2.
Outcome brownian_exit() {
  const auto& est = exit_estimates("brownian", brownian_plan());
  double worst = 0.0;
  for (std::size_t i = 0; i < kFractions.size(); ++i) {
    const double x = kFractions[i];
    worst = std::max(worst, std::abs(est[i].mean / (0.5 * x * (1.0 - x)) - 1.0));
  }
  return {worst < 0.02, "max relative error " + fmt(worst) + " (limit 0.02)"};
}

LadderExponent time_ladder(const ProcessSpec& s) {
  LadderOptions opt;
  opt.space_axis = false;
  return LadderExponent(s, opt);
}

// 3. kappa(z,0) kappa^(z,0) = z.
Outcome kappa_identity_crit() {
  double worst = 0.0;
  for (const char* name : {"stable-asym-1.5", "cgmy-zero-mean"}) {
    const auto s = preset(name);
    const auto up = time_ladder(s);
    const auto down = time_ladder(s.dual());
    for (double z : {1e-2, 1.0, 1e2}) worst = std::max(worst, std::abs(up.kappa_time(z) * down.kappa_time(z) / z - 1.0));
  }
  return {worst < 1e-3, "max |kappa kappa^ / z - 1| = " + fmt(worst) + " (limit 1e-3)"};
}

// 4. kappa(z,0) = sqrt(z) for symmetric processes.
Outcome symmetric_kappa() {
  double worst = 0.0;
  for (const char* name : {"stable-sym-1.5", "cgmy-sym"}) {
    const auto up = time_ladder(preset(name));
    for (double z : {1e-2, 1.0, 1e2}) worst = std::max(worst, std::abs(up.kappa_time(z) / std::sqrt(z) - 1.0));
  }
  return {worst < 1e-4, "max relative error " + fmt(worst) + " (limit 1e-4)"};
}

// 5. Inversion of l^{-1-a/2} against r^{a/2} / Gamma(1+a/2).
Outcome inversion_oracle() {
  RenewalOptions opt;
  const auto grid = renewal_grid(opt);
  double worst = 0.0;
  for (double alpha : {1.2, 1.5, 1.8}) {
    const double a = alpha / 2.0;
    auto F = [a](std::complex<double> l) { return std::pow(l, -1.0 - a); };
    const auto V = invert_renewal_transform(F, grid, opt, "power pair");
    for (double r : grid) worst = std::max(worst, std::abs(V(r) * std::tgamma(1.0 + a) / std::pow(r, a) - 1.0));
  }
  return {worst < 1e-4, "max relative error " + fmt(worst) + " on [1e-4, 1e4] (limit 1e-4)"};
}

// 6. h V V^ comparable to a constant over r in [1e-2, 1e2].
Outcome product_comparability() {
  const auto r_grid = log_grid(1e-2, 1e2, 9);
  bool ok = true;
  std::string detail;
  for (const auto& name : preset_names()) {
    const auto g = evaluate_gates(preset(name));
    if (!g.zero_mean || !g.wlsc_above_one) continue;
    const auto rep = product_bound_report(model(name), r_grid, 50.0);
    const bool stable = preset(name).strictly_stable();
    const double spread = rep.spread();
    const bool pass = stable ? spread < 1.02 : spread < 50.0;
    ok = ok && pass;
    detail += name + "=" + fmt(spread) + (pass ? " " : "(!) ");
  }
  return {ok, "spread of h V V^: " + detail + "(stable < 1.02, others < 50)"};
}

// 7. E^x tau + 3 se <= 2 V^(x) V(R-x), lower ratio >= 0.01.
Outcome theorem_main_upper() {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, SimPlan>> runs = {
      {"stable-sym-1.5", stable_plan()}, {"brownian", brownian_plan()}, {"cgmy-zero-mean", cgmy_plan()}};
  for (const auto& [name, plan] : runs) {
    const auto& m = model(name);
    const auto& est = exit_estimates(name, plan);
    double hi = 0.0, lo = INFINITY;
    bool upper = true;
    for (std::size_t i = 0; i < kFractions.size(); ++i) {
      const double x = kFractions[i];
      const double b = m.V_hat(x) * m.V(1.0 - x);
      upper = upper && est[i].mean + 3.0 * est[i].std_error <= 2.0 * b;
      hi = std::max(hi, est[i].mean / b);
      lo = std::min(lo, est[i].mean / b);
    }
    const bool pass = upper && lo >= 0.01;
    ok = ok && pass;
    detail += name + " ratio [" + fmt(lo) + ", " + fmt(hi) + "]" + (pass ? " " : "(!) ");
  }
  return {ok, detail};
}

struct CdfScan {
  double spread_sup = 0.0;
  double spread_inf = 0.0;
  bool saturated = true;
  double worst_deficit = 0.0;  // max (1 - P) - 3 se at x >= 10 h^-1(1/t)
};

CdfScan cdf_scan(const std::string& name, const SimPlan& plan) {
  const auto spec = preset(name);
  const auto& m = model(name);
  const std::vector<double> ts = {0.01, 0.03, 0.1, 0.3, 1.0};
  const std::vector<double> ks = {0.1, 0.3, 1.0, 3.0, 10.0};
  double lo_s = INFINITY, hi_s = 0.0, lo_i = INFINITY, hi_i = 0.0;
  CdfScan out;
  out.worst_deficit = -INFINITY;
  for (double t : ts) {
    const double s = m.conc.h_inv(1.0 / t);
    std::vector<double> xs;
    for (double k : ks) xs.push_back(k * s);
    const auto up = sup_cdf(spec, t, xs, plan);
    const auto down = inf_cdf(spec, t, xs, plan);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double rs = up[i].mean / std::min(1.0, m.V(xs[i]) / m.V(s));
      const double ri = down[i].mean / std::min(1.0, m.V_hat(xs[i]) / m.V_hat(s));
      lo_s = std::min(lo_s, rs);
      hi_s = std::max(hi_s, rs);
      lo_i = std::min(lo_i, ri);
      hi_i = std::max(hi_i, ri);
      if (ks[i] >= 10.0)
        for (const auto* e : {&up[i], &down[i]}) {
          const double deficit = (1.0 - e->mean) - 3.0 * e->std_error;
          out.worst_deficit = std::max(out.worst_deficit, deficit);
          out.saturated = out.saturated && deficit <= 0.0;
        }
    }
  }
  out.spread_sup = hi_s / lo_s;
  out.spread_inf = hi_i / lo_i;
  return out;
}

// 8. Sup/inf CDF over a 5x5 (t, x) grid.
Outcome sup_cdf_bounds() {
  SimPlan bp;
  bp.n_paths = 20000;
  bp.dt = 1e-4;
  bp.seed = 14;
  SimPlan sp = bp;
  sp.dt = 2e-4;
  sp.seed = 15;
  const auto b = cdf_scan("brownian", bp);
  const auto s = cdf_scan("stable-sym-1.5", sp);
  const bool ok = b.spread_sup < 50 && b.spread_inf < 50 && b.saturated && s.spread_sup < 50 && s.spread_inf < 50;
  return {ok, "brownian spreads " + fmt(b.spread_sup) + "/" + fmt(b.spread_inf) + ", saturated " +
                  (b.saturated ? "yes" : "no") + "; stable-sym-1.5 spreads " + fmt(s.spread_sup) + "/" +
                  fmt(s.spread_inf) + ", saturation (informational) " + (s.saturated ? "yes" : "no") +
                  " with 1 - P exceeding 3 se by " + fmt(s.worst_deficit)};
}

// 9. Creeping condition tri-state paired with the small-x slope of V.
Outcome creeping_crit() {
  const auto jumps = creeping_condition(model("bm-positive-jumps"));
  const auto stable = creeping_condition(model("stable-sym-1.5"));
  const bool ok = jumps.verdict == Condition::holds && std::abs(jumps.v_slope - 1.0) <= 0.05 &&
                  stable.verdict == Condition::fails && std::abs(stable.v_slope - 0.75) <= 0.05;
  return {ok, "bm-positive-jumps " + to_string(jumps.verdict) + " slope " + fmt(jumps.v_slope) +
                  "; stable-sym-1.5 " + to_string(stable.verdict) + " slope " + fmt(stable.v_slope)};
}

// 10. kappa(0,l) rebuilt from nu and V^.
Outcome vigon_crit() {
  const auto rep = ladder_levy_consistency(model("stable-sym-1.5"), log_grid(1e-2, 1e2, 9));
  return {rep.verdict == Verdict::pass && rep.min_ratio >= 0.9 && rep.max_ratio <= 1.1,
          "ratio [" + fmt(rep.min_ratio) + ", " + fmt(rep.max_ratio) + "]"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 11. Two verify runs with the same seed write identical result.json.
Outcome determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "levy-acceptance-determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto cfg = dir / "config.yaml";
  std::ofstream(cfg) << "spec: {preset: cgmy-zero-mean}\n"
                        "claims: [exit-upper, kappa-identity, pruitt]\n"
                        "grids: {x: [0.25, 0.5], pruitt_t: [0.1], pruitt_r: [0.5, 1]}\n"
                        "plan: {n_paths: 500, eps: 0.005, dt: 0.0005, seed: 5}\n";
  std::string a, b;
#ifdef LEVYCTL_PATH
  for (const char* run : {"a", "b"}) {
    const auto cmd = std::string(LEVYCTL_PATH) + " verify " + cfg.string() + " --output " + (dir / run).string() +
                     " > " + (dir / (std::string(run) + ".log")).string();
    if (std::system(cmd.c_str()) != 0) return {false, "levyctl verify exited nonzero"};
  }
#else
  for (const char* run : {"a", "b"}) {
    auto c = load_config(cfg);
    c.output_dir = dir / run;
    run_experiment(c);
  }
#endif
  a = slurp(dir / "a" / "result.json");
  b = slurp(dir / "b" / "result.json");
  fs::remove_all(dir);
  return {!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, stable_exit},          {2, brownian_exit},      {3, kappa_identity_crit}, {4, symmetric_kappa},
      {5, inversion_oracle},     {6, product_comparability}, {7, theorem_main_upper}, {8, sup_cdf_bounds},
      {9, creeping_crit},        {10, vigon_crit},        {11, determinism}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
