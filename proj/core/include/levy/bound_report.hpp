#pragma once

#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace levy {

enum class Verdict { pass, fail, skipped, inconclusive };
std::string to_string(Verdict v);

struct BoundRow {
  std::vector<double> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
};

// Grid of empirical ratios for one inequality of the theory.
struct BoundReport {
  std::string id;
  std::string description;
  std::vector<std::string> input_names;
  std::vector<BoundRow> rows;
  double min_ratio = std::numeric_limits<double>::quiet_NaN();
  double max_ratio = std::numeric_limits<double>::quiet_NaN();
  // Declared acceptance band. For comparability checks band_hi bounds max/min.
  double band_lo = 0.0;
  double band_hi = std::numeric_limits<double>::infinity();
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::map<std::string, double> metrics;

  void add(std::vector<double> inputs, double lhs, double rhs);
  // Recomputes min_ratio / max_ratio from the rows.
  void summarize();
  double spread() const { return max_ratio / min_ratio; }
  // Verdict helpers.
  void judge_within(double lo, double hi);  // every ratio in [lo, hi]
  void judge_spread(double max_spread);     // max_ratio / min_ratio < max_spread
};

nlohmann::json to_json(const BoundReport& r);
// Columns: <input names...>,lhs,rhs,ratio
void write_csv(std::ostream& os, const BoundReport& r);

}  // namespace levy
