#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levy/bound_report.hpp"
#include "levy/concentration/concentration.hpp"
#include "levy/fluctuation/ladder.hpp"
#include "levy/fluctuation/renewal.hpp"

namespace levy {

// Everything the renewal-side checks need for one spec, built once.
struct FluctuationModel {
  ProcessSpec spec;
  ConcentrationProfile conc;
  LadderExponent ladder;
  LadderExponent dual_ladder;
  RenewalFunction V;
  RenewalFunction V_hat;

  explicit FluctuationModel(const ProcessSpec& s, const RenewalOptions& opt = {}, const LadderOptions& lopt = {});
};

// Power-law V for strictly stable specs, x^{a rho} / (kappa(0,1) Gamma(1 + a rho)).
RenewalFunction stable_renewal(const ProcessSpec& spec, double kappa_at_one, std::span<const double> grid);
// 1/sqrt(h(r)), the comparison profile for symmetric specs.
RenewalFunction symmetric_sqrt_h(const ConcentrationProfile& conc, std::span<const double> grid);

// kappa(z,0) kappa^(z,0) / z, pass within [1 - tol, 1 + tol].
BoundReport kappa_identity(const LadderExponent& ladder, const LadderExponent& dual, std::span<const double> z_grid,
                           double tol = 1e-3);

// kappa(lz,0) <= c l^rho kappa(z,0) and c^{-1} l^{1-rho} kappa(z,0) <= kappa(lz,0), rho = 1 - eta_lower;
// metric "c" is the smallest feasible constant.
BoundReport kappa_scaling_report(const LadderExponent& ladder, std::span<const double> z_grid,
                                 std::span<const double> lambda_grid, double max_c = 50.0);

// h(r) V(r) V^(r) across r; metric "spread_drift" is the spread of (h + |b_r|/r) V V^.
BoundReport product_bound_report(const FluctuationModel& m, std::span<const double> r_grid, double band = 50.0);

// kappa(l,0) V(h^{-1}(l)) across l.
BoundReport kappa_est_report(const FluctuationModel& m, std::span<const double> lambda_grid, double band = 50.0);

// min over grid pairs of V(lx) / (l^{alpha-1} V(x)), pass when >= floor.
BoundReport V_scaling_report(const RenewalFunction& V, double alpha, std::span<const double> x_grid,
                             double floor = 1e-2);

// Reconstructs kappa(0,l) from nu and V^ and compares with the ladder exponent.
BoundReport ladder_levy_consistency(const FluctuationModel& m, std::span<const double> lambda_grid,
                                    double lo = 0.9, double hi = 1.1);

enum class Condition { holds, fails, inconclusive, hypothesis_not_met };
std::string to_string(Condition c);

struct ConditionResult {
  std::string id;
  Condition verdict = Condition::inconclusive;  // convergence of the integral
  Condition classification = Condition::inconclusive;  // before hypothesis checks
  std::vector<double> endpoints;          // 2^{-k} or 2^{k}
  std::vector<double> partial_integrals;  // integral up to each endpoint
  double increment_ratio = 0.0;           // median ratio of consecutive dyadic increments
  double v_slope = 0.0;                   // log-log slope of V at the matching end
  bool slope_consistent = false;          // holds <=> slope within slope_tol of 1
  double hypothesis_ratio = 0.0;          // max nu(z,inf)/nu(-inf,-z) on z >= 1 (linearity only)
  std::string reason;
};
nlohmann::json to_json(const ConditionResult& r);

// Convergence of \int_0^1 nu(y,inf)/(y h(y)) dy, paired with the small-x slope of V.
ConditionResult creeping_condition(const FluctuationModel& m, double slope_tol = 0.05);
// Convergence of \int_1^inf nu(y,inf)/(y h(y)) dy under nu(z,inf) <= C nu(-inf,-z), paired with the large-x slope.
ConditionResult linearity_large_condition(const FluctuationModel& m, double slope_tol = 0.05);

}  // namespace levy
