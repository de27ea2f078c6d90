#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "levy/concentration/concentration.hpp"
#include "levy/error.hpp"
#include "levy/fluctuation/reports.hpp"
#include "levy/harness/config.hpp"
#include "levy/harness/harness.hpp"
#include "levy/montecarlo/montecarlo.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/spectral/spectral.hpp"

using namespace levy;

namespace {

// "lo:hi:n" for a log grid, otherwise a comma-separated list.
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  try {
    if (s.find(':') != std::string::npos) {
      std::stringstream ss(s);
      std::string a, b, n;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, n, ':');
      return log_grid(std::stod(a), std::stod(b), std::stoul(n));
    }
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    throw ConfigError("bad grid '" + s + "' (use lo:hi:points or a comma list)");
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

void print_row(std::initializer_list<double> v) {
  bool first = true;
  for (double x : v) {
    std::cout << (first ? "" : ",") << x;
    first = false;
  }
  std::cout << '\n';
}

void show_model(const ExperimentConfig& cfg) {
  const auto gates = evaluate_gates(cfg.spec);
  ConcentrationProfile conc(cfg.spec);
  nlohmann::json j;
  j["spec"] = spec_to_json(cfg.spec);
  j["closed_form_psi"] = cfg.spec.has_closed_form_psi();
  j["symmetric"] = cfg.spec.symmetric();
  if (const auto rho = cfg.spec.stable_positivity()) j["stable_positivity"] = *rho;
  j["gates"] = to_json(gates);
  j["h_inv_of_one"] = conc.h_inv(1.0);
  std::cout << j.dump(2) << '\n';
}

void compute(const std::string& what, const ExperimentConfig& cfg, const std::vector<double>& grid) {
  std::cout << std::setprecision(12);
  if (what == "h" || what == "b") {
    ConcentrationProfile conc(cfg.spec);
    write_concentration_csv(std::cout, concentration_table(conc, grid));
  } else if (what == "psi") {
    write_psi_csv(std::cout, cfg.spec, grid);
  } else if (what == "kappa") {
    const LadderExponent up(cfg.spec);
    const LadderExponent down(cfg.spec.dual());
    std::cout << "z,kappa_time,kappa_space,dual_kappa_time,dual_kappa_space\n";
    for (double z : grid) print_row({z, up.kappa_time(z), up.kappa_space(z), down.kappa_time(z), down.kappa_space(z)});
  } else if (what == "V") {
    const auto V = renewal_V(cfg.spec);
    const auto V_hat = renewal_V_hat(cfg.spec);
    std::cout << "x,V,V_hat\n";
    for (double x : grid) print_row({x, V(x), V_hat(x)});
  } else {
    throw ConfigError("compute: unknown quantity '" + what + "'");
  }
}

void simulate(const std::string& what, const ExperimentConfig& cfg, double t) {
  std::cout << std::setprecision(12);
  if (what == "exit") {
    std::vector<double> xs;
    for (double f : cfg.grids.x) xs.push_back(f * cfg.R);
    const auto est = exit_time_grid(cfg.spec, xs, cfg.R, cfg.plan);
    std::cout << "x,R,mean,std_error,censored_fraction\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      print_row({xs[i], cfg.R, est[i].mean, est[i].std_error, est[i].censored_fraction});
  } else if (what == "supcdf") {
    ConcentrationProfile conc(cfg.spec);
    const double s = conc.h_inv(1.0 / t);
    std::vector<double> xs;
    for (double k : cfg.grids.sup_x) xs.push_back(k * s);
    const auto est = sup_cdf(cfg.spec, t, xs, cfg.plan);
    std::cout << "t,x,probability,std_error\n";
    for (std::size_t i = 0; i < xs.size(); ++i) print_row({t, xs[i], est[i].mean, est[i].std_error});
  } else {
    throw ConfigError("simulate: unknown problem '" + what + "'");
  }
}

int verify(ExperimentConfig cfg, const std::vector<std::string>& claims, const std::string& output) {
  if (!claims.empty()) cfg.claims = claims;
  if (!output.empty()) cfg.output_dir = output;
  const auto r = run_experiment(cfg);
  for (const auto& c : r.claims) {
    std::cout << std::left << std::setw(20) << c.id << std::setw(14) << to_string(c.verdict) << c.reason << '\n';
  }
  std::cout << "results in " << cfg.output_dir.string() << '\n';
  return r.exit_code;
}

int report(const std::string& dir) {
  std::ifstream in(std::filesystem::path(dir) / "result.json");
  if (!in) throw ConfigError("no result.json in " + dir);
  const auto j = nlohmann::json::parse(in);
  std::cout << "spec: " << j.at("spec").dump() << '\n';
  std::cout << "gates: " << j.at("gates").dump() << '\n';
  for (const auto& c : j.at("claims")) {
    std::cout << std::left << std::setw(20) << c.at("id").get<std::string>() << std::setw(14)
              << c.at("verdict").get<std::string>();
    for (const auto& rep : c.at("reports")) {
      const auto lo = rep.at("min_ratio");
      const auto hi = rep.at("max_ratio");
      if (lo.is_number() && hi.is_number())
        std::cout << rep.at("id").get<std::string>() << " [" << lo.get<double>() << ", " << hi.get<double>() << "] ";
    }
    std::cout << c.at("reason").get<std::string>() << '\n';
  }
  return j.at("exit_code").get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluctuation theory toolkit for one-dimensional Levy processes"};
  app.require_subcommand(1);

  std::string cfg_path, what, grid_text, output, dir;
  std::vector<std::string> claims;
  double t = 1.0;

  auto* model = app.add_subcommand("model", "Inspect a process specification");
  auto* show = model->add_subcommand("show", "Print the spec, gates and scale");
  show->add_option("config", cfg_path, "Experiment config")->required()->check(CLI::ExistingFile);
  model->require_subcommand(1);

  auto* comp = app.add_subcommand("compute", "Tabulate h, b, psi, kappa or V");
  comp->add_option("quantity", what, "h | b | psi | kappa | V")
      ->required()
      ->check(CLI::IsMember({"h", "b", "psi", "kappa", "V"}));
  comp->add_option("config", cfg_path, "Experiment config")->required()->check(CLI::ExistingFile);
  comp->add_option("--grid", grid_text, "lo:hi:points (log spaced) or a comma list")->default_val("1e-2:1e2:9");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates");
  sim->add_option("problem", what, "exit | supcdf")->required()->check(CLI::IsMember({"exit", "supcdf"}));
  sim->add_option("config", cfg_path, "Experiment config")->required()->check(CLI::ExistingFile);
  sim->add_option("--t", t, "Time horizon for supcdf")->default_val(1.0);

  auto* ver = app.add_subcommand("verify", "Run claim checks and write result.json");
  ver->add_option("config", cfg_path, "Experiment config")->required()->check(CLI::ExistingFile);
  ver->add_option("--claims", claims, "Claims to run (default: the config's list)")->delimiter(',');
  ver->add_option("--output", output, "Output directory (default: the config's)");

  auto* rep = app.add_subcommand("report", "Summarise a result directory");
  rep->add_option("dir", dir, "Directory holding result.json")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*rep) return report(dir);
    const auto cfg = load_config(cfg_path);
    if (*model) {
      show_model(cfg);
      return 0;
    }
    if (*comp) {
      compute(what, cfg, parse_grid(grid_text));
      return 0;
    }
    if (*sim) {
      simulate(what, cfg, t);
      return 0;
    }
    return verify(cfg, claims, output);
  } catch (const ConfigError& e) {
    std::cerr << "levyctl: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "levyctl: " << e.what() << '\n';
    return 1;
  }
}
