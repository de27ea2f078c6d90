#include "levy/model/presets.hpp"

#include <functional>
#include <map>

#include "levy/error.hpp"

namespace levy {

namespace {

ProcessSpec closing_example() {
  CompositeParams p;
  p.pieces = {{Side::negative, 1.0, 0.0, 1.5}, {Side::positive, 1.0, 1.0, 1.2}};
  return ProcessSpec(p, "closing-example");
}

const std::map<std::string, std::function<ProcessSpec()>, std::less<>>& registry() {
  static const std::map<std::string, std::function<ProcessSpec()>, std::less<>> r = {
      {"stable-sym-1.5", [] { return ProcessSpec(StableParams{1.5, 0.0, 1.0}, "stable-sym-1.5"); }},
      {"stable-asym-1.5", [] { return ProcessSpec(StableParams{1.5, 0.5, 1.0}, "stable-asym-1.5"); }},
      {"stable-skew-1.5", [] { return ProcessSpec(StableParams{1.5, 1.0, 1.0}, "stable-skew-1.5"); }},
      {"stable-sym-0.8", [] { return ProcessSpec(StableParams{0.8, 0.0, 1.0}, "stable-sym-0.8"); }},
      {"brownian", [] { return ProcessSpec(StableParams{2.0, 0.0, 1.0}, "brownian"); }},
      {"cgmy-zero-mean",
       [] { return ProcessSpec(CgmyParams{1.0, 1.0, 2.0, 5.0, 1.4, 0.0, 0.0}, "cgmy-zero-mean"); }},
      {"cgmy-sym", [] { return ProcessSpec(CgmyParams{1.0, 1.0, 3.0, 3.0, 1.4, 0.0, 0.0}, "cgmy-sym"); }},
      {"bm-positive-jumps",
       [] {
         BrownianJumpsParams p;
         p.sigma = 1.0;
         p.rate = 1.0;
         p.law = JumpLaw::exponential_up;
         p.eta_up = 2.0;
         return ProcessSpec(p, "bm-positive-jumps");
       }},
      {"spectrally-negative",
       [] { return ProcessSpec(OneSidedParams{Side::negative, 1.0, 1.0, 1.0, 0.5, 0.0}, "spectrally-negative"); }},
      {"closing-example", [] { return closing_example(); }},
      {"closing-example-mirrored",
       [] {
         auto p = std::get<CompositeParams>(closing_example().dual().params());
         return ProcessSpec(p, "closing-example-mirrored");
       }},
      {"closing-example-symmetric",
       [] {
         CompositeParams p;
         p.pieces = {{Side::negative, 1.0, 0.0, 1.5}, {Side::positive, 1.0, 0.0, 1.5}};
         return ProcessSpec(p, "closing-example-symmetric");
       }},
  };
  return r;
}

}  // namespace

ProcessSpec preset(std::string_view name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw SpecError("unknown preset '" + std::string(name) + "'");
  return it->second();
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

}  // namespace levy
