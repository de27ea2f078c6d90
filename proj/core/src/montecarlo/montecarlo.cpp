#include "levy/montecarlo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "levy/error.hpp"
#include "levy/montecarlo/sampler.hpp"

namespace levy {

namespace {

// Stream tags keep experiments with a shared seed independent.
enum Stream : std::uint64_t { exit_stream = 1, sup_stream = 2, abs_stream = 3, sign_stream = 4 };

MCEstimate summarize(std::span<const double> values, std::size_t censored, const SimPlan& plan) {
  MCEstimate e;
  const auto n = values.size();
  e.n_effective = n;
  e.plan = plan;
  if (n == 0) return e;
  e.mean = pairwise_sum(values) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - e.mean) * (values[i] - e.mean);
  const double var = n > 1 ? pairwise_sum(sq) / static_cast<double>(n - 1) : 0.0;
  e.std_error = std::sqrt(var / static_cast<double>(n));
  e.censored_fraction = static_cast<double>(censored) / static_cast<double>(n);
  e.biased_low = e.censored_fraction > 0.01;
  return e;
}

std::size_t thread_count(const SimPlan& plan) {
  if (plan.threads > 0) return plan.threads;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace

void SimPlan::validate(double width) const {
  if (!(dt > 0.0)) throw ConfigError("plan: dt must be positive");
  if (!(eps > 0.0)) throw ConfigError("plan: eps must be positive");
  if (n_paths < 1) throw ConfigError("plan: n_paths must be >= 1");
  if (horizon < 0.0) throw ConfigError("plan: horizon must be >= 0");
  if (!(refine >= 1.0)) throw ConfigError("plan: refine must be >= 1");
  if (refine_levels < 0) throw ConfigError("plan: refine_levels must be >= 0");
  if (!(zone > 0.0 && zone < 0.5)) throw ConfigError("plan: zone must lie in (0, 0.5)");
  if (width > 0.0 && !(eps < width / 100.0))
    throw ConfigError("plan: eps = " + detail::sci(eps) + " must be below width/100 = " + detail::sci(width / 100.0));
}

double SimPlan::step(double d, double scale, double base) const {
  double h = base;
  double z = zone * scale;
  for (int k = 0; k < refine_levels && d < z; ++k) {
    h /= refine;
    z *= 0.1;
  }
  return h;
}

nlohmann::json to_json(const SimPlan& p) {
  return {{"dt", p.dt},         {"eps", p.eps},       {"n_paths", p.n_paths},
          {"horizon", p.horizon}, {"seed", p.seed},   {"refine", p.refine},
          {"refine_levels", p.refine_levels}, {"zone", p.zone}, {"min_steps", p.min_steps}};
}

SimPlan plan_from_json(const nlohmann::json& j, SimPlan p) {
  p.dt = j.value("dt", p.dt);
  p.eps = j.value("eps", p.eps);
  p.n_paths = j.value("n_paths", p.n_paths);
  p.horizon = j.value("horizon", p.horizon);
  p.seed = j.value("seed", p.seed);
  p.refine = j.value("refine", p.refine);
  p.refine_levels = j.value("refine_levels", p.refine_levels);
  p.zone = j.value("zone", p.zone);
  p.threads = j.value("threads", p.threads);
  p.min_steps = j.value("min_steps", p.min_steps);
  return p;
}

nlohmann::json to_json(const MCEstimate& e) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"n_effective", e.n_effective},
          {"censored_fraction", e.censored_fraction},
          {"biased_low", e.biased_low}};
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

std::vector<double> parallel_map(std::size_t n, std::size_t threads, const std::function<double(std::size_t)>& f) {
  std::vector<double> out(n);
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double default_horizon(const ProcessSpec& spec, double R) { return 50.0 / ConcentrationProfile(spec).h(R); }

MCEstimate exit_time(const ProcessSpec& spec, double x, double R, const SimPlan& plan) {
  const double xs[] = {x};
  return exit_time_grid(spec, xs, R, plan).front();
}

std::vector<MCEstimate> exit_time_grid(const ProcessSpec& spec, std::span<const double> xs, double R,
                                       const SimPlan& plan) {
  plan.validate(R);
  for (double x : xs)
    if (!(x > 0.0 && x < R)) throw Error("exit_time: start must lie inside (0, R)");
  const IncrementSampler sampler(spec, plan.eps);
  const double horizon = plan.horizon > 0.0 ? plan.horizon : default_horizon(spec, R);
  std::vector<MCEstimate> out;
  for (double x0 : xs) {
    // A negative value marks a censored path.
    auto path = [&](std::size_t i) {
      Rng rng = path_rng(plan.seed, exit_stream, i);
      double x = x0;
      double t = 0.0;
      auto outside = [&](double y) { return !(y > 0.0 && y < R); };
      while (t < horizon) {
        const double h = std::min(plan.step(std::min(x, R - x), R, plan.dt), horizon - t);
        t += h;
        if (sampler.advance(x, h, rng, outside)) return t;
      }
      return -horizon;
    };
    auto values = parallel_map(plan.n_paths, thread_count(plan), path);
    std::size_t censored = 0;
    for (double& v : values)
      if (v < 0.0) {
        v = -v;
        ++censored;
      }
    out.push_back(summarize(values, censored, plan));
  }
  return out;
}

namespace {

// Fraction of paths for which `hit` records each level; levels refine the step
// when the monitored coordinate is within the zone below them.
std::vector<MCEstimate> level_probabilities(const IncrementSampler& sampler, double t, std::span<const double> levels,
                                            const SimPlan& plan, Stream stream, bool absolute, bool want_below) {
  plan.validate();
  const double base = std::min(plan.dt, t / static_cast<double>(plan.min_steps));
  const std::size_t m = levels.size();
  std::vector<std::vector<double>> hits(m, std::vector<double>(plan.n_paths));
  // Each path returns a bit mask of crossed levels packed into the value.
  if (m > 52) throw Error("level_probabilities: at most 52 levels per run");
  auto path = [&](std::size_t i) {
    Rng rng = path_rng(plan.seed, stream, i);
    double x = 0.0;
    double s = 0.0;
    double peak = 0.0;
    std::uint64_t crossed = 0;
    const std::uint64_t all = (1ULL << m) - 1;
    auto observe = [&](double y) {
      const double v = absolute ? std::abs(y) : y;
      if (v > peak) {
        peak = v;
        for (std::size_t k = 0; k < m; ++k)
          if (peak >= levels[k]) crossed |= 1ULL << k;
      }
      return crossed == all;
    };
    while (s < t) {
      double d = std::numeric_limits<double>::infinity();
      double scale = 1.0;
      const double v = absolute ? std::abs(x) : x;
      for (std::size_t k = 0; k < m; ++k)
        if (!(crossed >> k & 1ULL) && levels[k] - v < d) {
          d = levels[k] - v;
          scale = levels[k];
        }
      const double h = std::min(plan.step(d, scale, base), t - s);
      s += h;
      if (sampler.advance(x, h, rng, observe)) break;
    }
    return static_cast<double>(crossed);
  };
  const auto masks = parallel_map(plan.n_paths, thread_count(plan), path);
  for (std::size_t i = 0; i < plan.n_paths; ++i) {
    const auto bits = static_cast<std::uint64_t>(masks[i]);
    for (std::size_t k = 0; k < m; ++k) {
      const bool hit = bits >> k & 1ULL;
      hits[k][i] = (want_below ? !hit : hit) ? 1.0 : 0.0;
    }
  }
  std::vector<MCEstimate> out;
  for (const auto& h : hits) out.push_back(summarize(h, 0, plan));
  return out;
}

}  // namespace

std::vector<MCEstimate> sup_cdf(const ProcessSpec& spec, double t, std::span<const double> xs, const SimPlan& plan) {
  return level_probabilities(IncrementSampler(spec, plan.eps), t, xs, plan, sup_stream, false, true);
}

std::vector<MCEstimate> inf_cdf(const ProcessSpec& spec, double t, std::span<const double> xs, const SimPlan& plan) {
  return sup_cdf(spec.dual(), t, xs, plan);
}

std::vector<MCEstimate> sup_abs_tail(const ProcessSpec& spec, double t, std::span<const double> rs,
                                     const SimPlan& plan) {
  return level_probabilities(IncrementSampler(spec, plan.eps), t, rs, plan, abs_stream, true, false);
}

MCEstimate sign_frequency(const ProcessSpec& spec, double t, const SimPlan& plan) {
  plan.validate();
  const IncrementSampler sampler(spec, plan.eps);
  const double base = std::min(plan.dt, t / static_cast<double>(plan.min_steps));
  auto path = [&](std::size_t i) {
    Rng rng = path_rng(plan.seed, sign_stream, i);
    if (sampler.exact()) return sampler.increment(t, rng) >= 0.0 ? 1.0 : 0.0;
    double x = 0.0;
    for (double s = 0.0; s < t;) {
      const double h = std::min(base, t - s);
      x += sampler.increment(h, rng);
      s += h;
    }
    return x >= 0.0 ? 1.0 : 0.0;
  };
  const auto v = parallel_map(plan.n_paths, thread_count(plan), path);
  return summarize(v, 0, plan);
}

BoundReport pruitt_report(const ProcessSpec& spec, const ConcentrationProfile& conc, std::span<const double> t_grid,
                          std::span<const double> r_grid, const SimPlan& plan, double max_c) {
  BoundReport rep;
  rep.id = "pruitt";
  rep.description = "P(sup|X| >= r) <= C3 t (h(r) + |b_r|/r); P(sup|X| < r) <= C / (t h(r))";
  rep.input_names = {"t", "r", "lower"};
  double c_up = 0.0;
  double c_lo = 0.0;
  for (double t : t_grid) {
    const auto tail = sup_abs_tail(spec, t, r_grid, plan);
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
      const double r = r_grid[k];
      const double h = conc.h(r);
      rep.add({t, r, 0.0}, tail[k].mean, t * (h + std::abs(conc.b(r)) / r));
      c_up = std::max(c_up, rep.rows.back().ratio);
      rep.add({t, r, 1.0}, 1.0 - tail[k].mean, 1.0 / (t * h));
      c_lo = std::max(c_lo, rep.rows.back().ratio);
    }
  }
  rep.summarize();
  rep.metrics["C3"] = c_up;
  rep.metrics["C_lower"] = c_lo;
  rep.band_lo = 0.0;
  rep.band_hi = max_c;
  rep.verdict = c_up <= max_c && c_lo <= max_c ? Verdict::pass : Verdict::fail;
  return rep;
}

BoundReport exit_upper_report(const ProcessSpec& spec, const RenewalFunction& V, const RenewalFunction& V_hat,
                              double R, std::span<const double> xs, const SimPlan& plan) {
  return exit_upper_report(V, V_hat, R, xs, exit_time_grid(spec, xs, R, plan));
}

BoundReport exit_upper_report(const RenewalFunction& V, const RenewalFunction& V_hat, double R,
                              std::span<const double> xs, std::span<const MCEstimate> est) {
  if (est.size() != xs.size()) throw Error("exit_upper_report: estimate count does not match the grid");
  BoundReport rep;
  rep.id = "exit-upper";
  rep.description = "E^x tau(0,R) <= V^(x) V(R)";
  rep.input_names = {"x", "R", "mean", "std_error", "censored_fraction"};
  bool ok = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double bound = V_hat(xs[i]) * V(R);
    const auto& e = est[i];
    rep.add({xs[i], R, e.mean, e.std_error, e.censored_fraction}, e.mean + 3.0 * e.std_error, bound);
    ok = ok && e.mean + 3.0 * e.std_error <= bound;
  }
  rep.summarize();
  rep.band_lo = 0.0;
  rep.band_hi = 1.0;
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  return rep;
}

}  // namespace levy
