#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "levy/bound_report.hpp"
#include "levy/concentration/concentration.hpp"
#include "levy/fluctuation/renewal.hpp"
#include "levy/model/process.hpp"

namespace levy {

struct SimPlan {
  double dt = 1e-4;           // base time step
  double eps = 1e-3;          // small-jump cutoff
  std::size_t n_paths = 10000;
  double horizon = 0.0;       // 0: 50 / h(R) for exit problems
  std::uint64_t seed = 1;
  double refine = 30.0;       // dt divisor per boundary zone
  int refine_levels = 2;      // nested zones, each ten times narrower
  double zone = 0.05;         // outer zone width relative to the interval
  std::size_t threads = 0;    // 0: hardware concurrency
  std::size_t min_steps = 2000;  // fixed-time problems use dt <= t / min_steps

  // Throws ConfigError; `width` is the smallest interval width in the run.
  void validate(double width = 0.0) const;
  // Step size at distance d from the nearest monitored level of scale `scale`.
  double step(double d, double scale, double base) const;
};

nlohmann::json to_json(const SimPlan& p);
SimPlan plan_from_json(const nlohmann::json& j, SimPlan defaults = {});

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_effective = 0;
  double censored_fraction = 0.0;
  bool biased_low = false;  // censored fraction above 1%
  SimPlan plan;
};
nlohmann::json to_json(const MCEstimate& e);

// Runs f(i) for i in [0, n) on plan-many threads and sums the values in index
// order, so the result does not depend on the thread count.
std::vector<double> parallel_map(std::size_t n, std::size_t threads, const std::function<double(std::size_t)>& f);
// Pairwise sum (deterministic).
double pairwise_sum(std::span<const double> v);

// E^x tau_(0,R).
MCEstimate exit_time(const ProcessSpec& spec, double x, double R, const SimPlan& plan);
std::vector<MCEstimate> exit_time_grid(const ProcessSpec& spec, std::span<const double> xs, double R,
                                       const SimPlan& plan);
double default_horizon(const ProcessSpec& spec, double R);

// P(sup_{s<=t} X_s < x) for each level in xs, on common paths.
std::vector<MCEstimate> sup_cdf(const ProcessSpec& spec, double t, std::span<const double> xs, const SimPlan& plan);
// P(inf_{s<=t} X_s > -x).
std::vector<MCEstimate> inf_cdf(const ProcessSpec& spec, double t, std::span<const double> xs, const SimPlan& plan);
// P(sup_{s<=t} |X_s| >= r) for each r.
std::vector<MCEstimate> sup_abs_tail(const ProcessSpec& spec, double t, std::span<const double> rs,
                                     const SimPlan& plan);
// P(X_t >= 0).
MCEstimate sign_frequency(const ProcessSpec& spec, double t, const SimPlan& plan);

// P(sup|X| >= r) <= C3 t (h(r) + |b_r|/r) and P(sup|X| <= r) <= C / (t h(r)).
// Metrics "C3" and "C_lower" hold the smallest feasible constants.
BoundReport pruitt_report(const ProcessSpec& spec, const ConcentrationProfile& conc, std::span<const double> t_grid,
                          std::span<const double> r_grid, const SimPlan& plan, double max_c = 50.0);

// E^x tau_(0,R) + 3 se <= V^(x) V(R).
BoundReport exit_upper_report(const ProcessSpec& spec, const RenewalFunction& V, const RenewalFunction& V_hat,
                              double R, std::span<const double> xs, const SimPlan& plan);
// Same check against precomputed estimates at xs.
BoundReport exit_upper_report(const RenewalFunction& V, const RenewalFunction& V_hat, double R,
                              std::span<const double> xs, std::span<const MCEstimate> est);

}  // namespace levy
