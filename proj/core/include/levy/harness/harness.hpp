#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levy/bound_report.hpp"
#include "levy/concentration/concentration.hpp"
#include "levy/fluctuation/reports.hpp"
#include "levy/harness/config.hpp"
#include "levy/model/exponent.hpp"
#include "levy/montecarlo/montecarlo.hpp"

namespace levy {

struct ClaimResult {
  std::string id;
  Verdict verdict = Verdict::inconclusive;
  std::string reason;  // why a claim failed or was skipped
  std::vector<BoundReport> reports;
  nlohmann::json details = nlohmann::json::object();  // MC estimates, condition diagnostics, metrics
  double wall_time = 0.0;                             // seconds; kept out of result.json
};
nlohmann::json to_json(const ClaimResult& r);

nlohmann::json to_json(const Gates& g);

// Shared, lazily built state for one experiment.
class ClaimContext {
 public:
  explicit ClaimContext(const ExperimentConfig& cfg);

  const ExperimentConfig& config() const { return cfg_; }
  const ProcessSpec& spec() const { return cfg_.spec; }
  const Gates& gates() const { return gates_; }
  const ConcentrationProfile& concentration();
  const FluctuationModel& model();
  // Time-axis ladder exponents of the process and its dual (the model's when already built).
  const LadderExponent& time_ladder();
  const LadderExponent& time_dual_ladder();
  // Absolute start points x = fraction * R.
  std::vector<double> start_points() const;
  // MC exit times at start_points(), computed once per experiment.
  const std::vector<MCEstimate>& exit_estimates();

 private:
  const ExperimentConfig& cfg_;
  Gates gates_;
  std::unique_ptr<ConcentrationProfile> conc_;
  std::unique_ptr<FluctuationModel> model_;
  std::unique_ptr<LadderExponent> ladder_;
  std::unique_ptr<LadderExponent> dual_ladder_;
  std::optional<std::vector<MCEstimate>> exit_;
};

struct ClaimInfo {
  std::string id;
  std::string description;
  bool needs_zero_mean = false;
  bool needs_wlsc = false;
  std::function<ClaimResult(ClaimContext&)> check;
};

// Every registered checker, in a fixed order.
const std::vector<ClaimInfo>& claim_registry();
const ClaimInfo& find_claim(const std::string& id);  // throws ConfigError for unknown ids
std::vector<std::string> claim_ids();

// Reason a gated claim cannot run, empty when every gate passes.
std::string gate_failure(const ClaimInfo& claim, const Gates& g);

// Tail domination nu(r,inf) <= c nu(-inf,-r) / ln(r + 1/r)^{1+beta} together with
// weak scaling above 1 of x -> x^2 \int_0^{1/x} u nu(-inf,-u) du.
struct TailDomination {
  bool satisfied = false;
  double inner_max = 0.0;  // max of the domination ratio on r in [1e-2, 1e2]
  double outer_max = 0.0;  // max outside that window
  double scaling_index = 0.0;
  std::string reason;
};
TailDomination check_tail_domination(const LevyMeasure& nu, double beta = 0.5);

struct ExperimentResult {
  Gates gates;
  std::vector<ClaimResult> claims;
  int exit_code = 0;  // 0: every claim passed or was skipped; 1: some claim failed
};

// Runs the configured claims without touching the file system.
ExperimentResult run_claims(const ExperimentConfig& cfg);
// run_claims plus result.json, one CSV per report and timing.json in cfg.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Deterministic summary (no wall times).
nlohmann::json summary_json(const ExperimentConfig& cfg, const ExperimentResult& r);
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& r);

}  // namespace levy
