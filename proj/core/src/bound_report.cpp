#include "levy/bound_report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace levy {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped:
      return "skipped";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

void BoundReport::add(std::vector<double> inputs, double lhs, double rhs) {
  rows.push_back({std::move(inputs), lhs, rhs, lhs / rhs});
}

void BoundReport::summarize() {
  min_ratio = std::numeric_limits<double>::infinity();
  max_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    if (std::isnan(row.ratio)) continue;
    min_ratio = std::min(min_ratio, row.ratio);
    max_ratio = std::max(max_ratio, row.ratio);
  }
  if (rows.empty()) min_ratio = max_ratio = std::numeric_limits<double>::quiet_NaN();
}

void BoundReport::judge_within(double lo, double hi) {
  summarize();
  band_lo = lo;
  band_hi = hi;
  const bool ok = !rows.empty() && std::all_of(rows.begin(), rows.end(), [&](const BoundRow& r) {
    return std::isfinite(r.ratio) && r.ratio >= lo && r.ratio <= hi;
  });
  verdict = ok ? Verdict::pass : Verdict::fail;
}

void BoundReport::judge_spread(double max_spread) {
  summarize();
  band_lo = 1.0;
  band_hi = max_spread;
  const bool finite = !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) {
    return std::isfinite(r.ratio) && r.ratio > 0.0;
  });
  metrics["spread"] = finite ? spread() : std::numeric_limits<double>::infinity();
  verdict = finite && spread() < max_spread ? Verdict::pass : Verdict::fail;
}

namespace {
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}
}  // namespace

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["description"] = r.description;
  j["input_names"] = r.input_names;
  auto& grid = j["grid"];
  grid = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json g;
    nlohmann::json in = nlohmann::json::array();
    for (double v : row.inputs) in.push_back(number(v));
    g["inputs"] = in;
    g["lhs"] = number(row.lhs);
    g["rhs"] = number(row.rhs);
    g["ratio"] = number(row.ratio);
    grid.push_back(g);
  }
  j["min_ratio"] = number(r.min_ratio);
  j["max_ratio"] = number(r.max_ratio);
  j["band"] = {number(r.band_lo), number(r.band_hi)};
  j["verdict"] = to_string(r.verdict);
  if (!r.reason.empty()) j["reason"] = r.reason;
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : r.metrics) m[k] = number(v);
  j["metrics"] = m;
  return j;
}

void write_csv(std::ostream& os, const BoundReport& r) {
  for (const auto& n : r.input_names) os << n << ',';
  os << "lhs,rhs,ratio\n" << std::setprecision(17);
  for (const auto& row : r.rows) {
    for (double v : row.inputs) os << v << ',';
    os << row.lhs << ',' << row.rhs << ',' << row.ratio << '\n';
  }
}

}  // namespace levy
