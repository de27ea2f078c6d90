#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levy/model/process.hpp"
#include "levy/montecarlo/montecarlo.hpp"

namespace levy {

// Evaluation grids. `x` holds start points as fractions of R; `sup_x` holds
// sup-CDF levels as multiples of h^{-1}(1/t).
struct Grids {
  std::vector<double> r;
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> z;
  std::vector<double> xi;
  std::vector<double> sup_x;
  std::vector<double> pruitt_t;
  std::vector<double> pruitt_r;
};

struct ExperimentConfig {
  ProcessSpec spec = ProcessSpec::brownian();
  nlohmann::json spec_source;  // the spec block as written
  std::vector<std::string> claims;
  Grids grids;
  double R = 1.0;
  SimPlan plan;
  std::filesystem::path output_dir = "levy-out";
  std::map<std::string, double> bands;  // per-claim overrides of the default band
  double default_band = 50.0;

  double band(const std::string& claim) const;
  // Throws ConfigError on empty grids, R <= 0, a bad plan and, when required, an empty claim list.
  void validate(bool require_claims = true) const;
};

// Structured-text (YAML or JSON) parsing. Relative output paths resolve against
// the config file's directory only when requested by the caller.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Process spec block: {preset: name} or {family: ..., parameters...}.
ProcessSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ProcessSpec& spec);

// YAML text to JSON (scalars that parse as numbers or booleans are converted).
nlohmann::json yaml_to_json(const std::string& text);

Grids default_grids();

}  // namespace levy
