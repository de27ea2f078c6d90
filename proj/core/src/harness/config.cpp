#include "levy/harness/config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "levy/error.hpp"
#include "levy/model/presets.hpp"
#include "levy/numerics/grid.hpp"

namespace levy {

namespace {

nlohmann::json node_to_json(const YAML::Node& n) {
  switch (n.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const auto& s = n.Scalar();
      if (n.Tag() == "!") return s;  // quoted
      if (s == "true" || s == "false") return s == "true";
      try {
        std::size_t pos = 0;
        if (s.find_first_of(".eE") == std::string::npos) {
          const long long v = std::stoll(s, &pos);
          if (pos == s.size()) return v;
        }
        const double d = std::stod(s, &pos);
        if (pos == s.size()) return d;
      } catch (const std::exception&) {
      }
      return s;
    }
    case YAML::NodeType::Sequence: {
      auto arr = nlohmann::json::array();
      for (const auto& c : n) arr.push_back(node_to_json(c));
      return arr;
    }
    case YAML::NodeType::Map: {
      auto obj = nlohmann::json::object();
      for (const auto& kv : n) obj[kv.first.as<std::string>()] = node_to_json(kv.second);
      return obj;
    }
  }
  return nullptr;
}

std::vector<double> grid_from_json(const nlohmann::json& j, const std::string& what) {
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& e : j) {
      if (!e.is_number()) throw ConfigError("grid '" + what + "': entries must be numbers");
      v.push_back(e.get<double>());
    }
    return v;
  }
  if (j.is_object()) {
    const double lo = j.at("from").get<double>();
    const double hi = j.at("to").get<double>();
    const auto n = j.at("points").get<std::size_t>();
    return j.value("spacing", std::string("log")) == "linear" ? linear_grid(lo, hi, n) : log_grid(lo, hi, n);
  }
  throw ConfigError("grid '" + what + "' must be a list or {from, to, points}");
}

Side side_from(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "positive" || s == "up") return Side::positive;
  if (s == "negative" || s == "down") return Side::negative;
  throw ConfigError("side must be positive or negative, got '" + s + "'");
}

std::vector<PowerPiece> pieces_from(const nlohmann::json& j) {
  std::vector<PowerPiece> out;
  for (const auto& p : j)
    out.push_back({side_from(p.at("side")), p.at("weight").get<double>(), p.value("decay", 0.0),
                   p.at("index").get<double>()});
  return out;
}

nlohmann::json pieces_to(std::span<const PowerPiece> pieces) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pieces)
    arr.push_back({{"side", to_string(p.side)}, {"weight", p.weight}, {"decay", p.decay}, {"index", p.index}});
  return arr;
}

JumpLaw law_from(const std::string& s) {
  if (s == "exponential-up") return JumpLaw::exponential_up;
  if (s == "exponential-down") return JumpLaw::exponential_down;
  if (s == "double-exponential") return JumpLaw::double_exponential;
  throw ConfigError("unknown jump law '" + s + "'");
}

std::string law_to(JumpLaw l) {
  switch (l) {
    case JumpLaw::exponential_up:
      return "exponential-up";
    case JumpLaw::exponential_down:
      return "exponential-down";
    case JumpLaw::double_exponential:
      return "double-exponential";
  }
  return "unknown";
}

}  // namespace

nlohmann::json yaml_to_json(const std::string& text) {
  try {
    return node_to_json(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
}

Grids default_grids() {
  Grids g;
  g.r = log_grid(1e-2, 1e2, 9);
  g.x = {0.1, 0.25, 0.5, 0.75, 0.9};
  g.t = {0.01, 0.03, 0.1, 0.3, 1.0};
  g.lambda = log_grid(1e-2, 1e2, 9);
  g.z = {1e-3, 1e-2, 0.1, 1.0, 10.0, 1e2, 1e3};
  g.xi = {};
  g.sup_x = {0.1, 0.3, 1.0, 3.0, 10.0};
  g.pruitt_t = {0.01, 0.1, 1.0};
  g.pruitt_r = {0.1, 0.3, 1.0, 3.0};
  return g;
}

double ExperimentConfig::band(const std::string& claim) const {
  const auto it = bands.find(claim);
  return it == bands.end() ? default_band : it->second;
}

void ExperimentConfig::validate(bool require_claims) const {
  if (require_claims && claims.empty()) throw ConfigError("config: claim list is empty");
  if (!(R > 0.0)) throw ConfigError("config: R must be positive");
  auto nonempty = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string("config: grid '") + name + "' is empty");
  };
  nonempty(grids.r, "r");
  nonempty(grids.x, "x");
  nonempty(grids.t, "t");
  nonempty(grids.lambda, "lambda");
  nonempty(grids.z, "z");
  nonempty(grids.sup_x, "sup_x");
  nonempty(grids.pruitt_t, "pruitt_t");
  nonempty(grids.pruitt_r, "pruitt_r");
  for (double x : grids.x)
    if (!(x > 0.0 && x < 1.0)) throw ConfigError("config: grid 'x' holds fractions of R in (0, 1)");
  plan.validate(R);
}

ProcessSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("spec must be a mapping");
  try {
    const std::string label = j.value("label", std::string());
    if (j.contains("preset")) {
      auto s = preset(j.at("preset").get<std::string>());
      return s;
    }
    const auto family = j.at("family").get<std::string>();
    if (family == "stable")
      return ProcessSpec(StableParams{j.at("alpha").get<double>(), j.value("beta", 0.0), j.value("scale", 1.0)}, label);
    if (family == "brownian") {
      const double sigma = j.value("sigma", 1.0);
      if (!(sigma > 0.0)) throw ConfigError("brownian: sigma must be positive");
      return ProcessSpec(StableParams{2.0, 0.0, sigma * sigma}, label.empty() ? "brownian" : label);
    }
    if (family == "cgmy") {
      CgmyParams p;
      const double c = j.value("c", 1.0);
      p.c_plus = j.value("c_plus", c);
      p.c_minus = j.value("c_minus", c);
      p.g = j.at("g").get<double>();
      p.m = j.at("m").get<double>();
      p.y = j.at("y").get<double>();
      p.sigma = j.value("sigma", 0.0);
      p.mean = j.value("mean", 0.0);
      return ProcessSpec(p, label);
    }
    if (family == "brownian_jumps") {
      BrownianJumpsParams p;
      p.sigma = j.value("sigma", p.sigma);
      p.rate = j.value("rate", p.rate);
      p.law = law_from(j.value("law", std::string("exponential-up")));
      p.p_up = j.value("p_up", p.p_up);
      p.eta_up = j.value("eta_up", p.eta_up);
      p.eta_down = j.value("eta_down", p.eta_down);
      p.mean = j.value("mean", p.mean);
      return ProcessSpec(p, label);
    }
    if (family == "one_sided") {
      OneSidedParams p;
      p.side = side_from(j.at("side"));
      p.sigma = j.value("sigma", p.sigma);
      p.weight = j.value("weight", p.weight);
      p.decay = j.value("decay", p.decay);
      p.index = j.value("index", p.index);
      p.mean = j.value("mean", p.mean);
      return ProcessSpec(p, label);
    }
    if (family == "composite") {
      CompositeParams p;
      p.sigma = j.value("sigma", 0.0);
      p.mean = j.value("mean", 0.0);
      p.pieces = pieces_from(j.at("pieces"));
      return ProcessSpec(p, label);
    }
    if (family == "raw") {
      RawTripletParams p;
      p.sigma = j.value("sigma", 0.0);
      p.gamma = j.value("gamma", 0.0);
      p.pieces = pieces_from(j.value("pieces", nlohmann::json::array()));
      return ProcessSpec(p, label);
    }
    throw ConfigError("unknown process family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("spec: ") + e.what());
  }
}

nlohmann::json spec_to_json(const ProcessSpec& spec) {
  nlohmann::json j = std::visit(
      [](const auto& p) -> nlohmann::json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StableParams>) {
          return {{"family", "stable"}, {"alpha", p.alpha}, {"beta", p.beta}, {"scale", p.scale}};
        } else if constexpr (std::is_same_v<T, CgmyParams>) {
          return {{"family", "cgmy"}, {"c_plus", p.c_plus}, {"c_minus", p.c_minus}, {"g", p.g},
                  {"m", p.m},         {"y", p.y},           {"sigma", p.sigma},     {"mean", p.mean}};
        } else if constexpr (std::is_same_v<T, BrownianJumpsParams>) {
          return {{"family", "brownian_jumps"}, {"sigma", p.sigma},   {"rate", p.rate},
                  {"law", law_to(p.law)},       {"p_up", p.p_up},     {"eta_up", p.eta_up},
                  {"eta_down", p.eta_down},     {"mean", p.mean}};
        } else if constexpr (std::is_same_v<T, OneSidedParams>) {
          return {{"family", "one_sided"}, {"side", to_string(p.side)}, {"sigma", p.sigma}, {"weight", p.weight},
                  {"decay", p.decay},      {"index", p.index},          {"mean", p.mean}};
        } else if constexpr (std::is_same_v<T, CompositeParams>) {
          return {{"family", "composite"}, {"sigma", p.sigma}, {"mean", p.mean}, {"pieces", pieces_to(p.pieces)}};
        } else {
          return {{"family", "raw"}, {"sigma", p.sigma}, {"gamma", p.gamma}, {"pieces", pieces_to(p.pieces)}};
        }
      },
      spec.params());
  if (!spec.label().empty()) j["label"] = spec.label();
  return j;
}

ExperimentConfig parse_config(const std::string& text) {
  const auto j = yaml_to_json(text);
  if (!j.is_object()) throw ConfigError("config must be a mapping");
  ExperimentConfig c;
  try {
    if (!j.contains("spec")) throw ConfigError("config: missing 'spec'");
    c.spec_source = j.at("spec");
    c.spec = spec_from_json(c.spec_source);
    if (j.contains("claims")) {
      if (!j.at("claims").is_array()) throw ConfigError("config: 'claims' must be a list");
      for (const auto& cl : j.at("claims")) c.claims.push_back(cl.get<std::string>());
    }
    c.R = j.value("R", 1.0);
    c.grids = default_grids();
    if (j.contains("grids")) {
      const auto& g = j.at("grids");
      auto take = [&](const char* key, std::vector<double>& dst) {
        if (g.contains(key)) dst = grid_from_json(g.at(key), key);
      };
      take("r", c.grids.r);
      take("x", c.grids.x);
      take("t", c.grids.t);
      take("lambda", c.grids.lambda);
      take("z", c.grids.z);
      take("xi", c.grids.xi);
      take("sup_x", c.grids.sup_x);
      take("pruitt_t", c.grids.pruitt_t);
      take("pruitt_r", c.grids.pruitt_r);
    }
    if (j.contains("plan")) c.plan = plan_from_json(j.at("plan"), c.plan);
    if (j.contains("output")) c.output_dir = j.at("output").get<std::string>();
    c.default_band = j.value("band", c.default_band);
    if (j.contains("bands"))
      for (const auto& [k, v] : j.at("bands").items()) c.bands[k] = v.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate(false);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace levy
