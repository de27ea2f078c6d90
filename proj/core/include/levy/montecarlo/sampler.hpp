#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "levy/model/process.hpp"

namespace levy {

using Rng = std::mt19937_64;

// Independent generator for one (seed, stream, path) triple; the stream tag
// separates experiments that share a seed.
Rng path_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t path);

// Increments of X. Strictly stable specs are sampled exactly
// (Chambers-Mallows-Stuck); other specs use jumps of size >= eps as a compound
// Poisson process, a Gaussian with the variance of the smaller jumps and the
// matching drift (finite-activity components are kept exactly).
class IncrementSampler {
 public:
  IncrementSampler(const ProcessSpec& spec, double eps);

  bool exact() const { return stable_; }
  double drift() const { return drift_; }
  double gaussian_variance_rate() const { return gauss_var_; }  // per unit time
  double jump_rate() const { return rate_; }
  double eps() const { return eps_; }

  // One increment over dt (no monitoring inside the step).
  double increment(double dt, Rng& rng) const;

  // Advances x by dt, reporting every intermediate position (after the
  // continuous part before each jump and after each jump) to observe(x); stops
  // early when observe returns true. Returns true on an early stop.
  template <typename Observe>
  bool advance(double& x, double dt, Rng& rng, Observe&& observe) const {
    if (stable_) {
      x += increment(dt, rng);
      return observe(x);
    }
    if (rate_ == 0.0) {
      x += continuous(dt, rng);
      return observe(x);
    }
    double left = dt;
    for (;;) {
      const double wait = std::exponential_distribution<double>(rate_)(rng);
      if (wait >= left) {
        x += continuous(left, rng);
        return observe(x);
      }
      x += continuous(wait, rng);
      if (observe(x)) return true;
      x += jump(rng);
      if (observe(x)) return true;
      left -= wait;
    }
  }

 private:
  struct JumpSource {
    double sign;
    double weight;
    double decay;
    double index;
    double threshold;  // jumps of size >= threshold (0 for finite activity)
    double cumulative_rate;
  };

  double continuous(double dt, Rng& rng) const;
  double jump(Rng& rng) const;
  static double jump_size(const JumpSource& s, Rng& rng);

  bool stable_ = false;
  double alpha_ = 2.0;
  double scale_ = 1.0;
  double cms_b_ = 0.0;  // arctan(beta tan(pi alpha/2)) / alpha
  double cms_s_ = 1.0;  // (1 + beta^2 tan^2(pi alpha/2))^{1/(2 alpha)}
  double eps_ = 0.0;
  double drift_ = 0.0;
  double gauss_var_ = 0.0;
  double rate_ = 0.0;
  std::vector<JumpSource> sources_;
};

}  // namespace levy
