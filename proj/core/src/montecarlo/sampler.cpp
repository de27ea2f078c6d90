#include "levy/montecarlo/sampler.hpp"

#include <cmath>
#include <numbers>

#include "levy/error.hpp"

namespace levy {

Rng path_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t path) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  // seed_seq mixes the triple into one 64-bit key; filling the whole state
  // through seed_seq would cost more than a short path.
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(path), hi(path)};
  std::uint32_t key[2];
  seq.generate(key, key + 2);
  return Rng((static_cast<std::uint64_t>(key[1]) << 32) | key[0]);
}

IncrementSampler::IncrementSampler(const ProcessSpec& spec, double eps) : eps_(eps) {
  if (!(eps > 0.0)) throw Error("IncrementSampler: eps must be positive");
  if (const auto* s = std::get_if<StableParams>(&spec.params())) {
    stable_ = true;
    alpha_ = s->alpha;
    scale_ = s->scale;
    if (alpha_ == 1.0 && s->beta != 0.0) throw UnsupportedSpecError("no sampler for asymmetric stable with alpha = 1");
    if (alpha_ != 1.0) {
      const double t = s->beta * std::tan(std::numbers::pi * alpha_ / 2.0);
      cms_b_ = std::atan(t) / alpha_;
      cms_s_ = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha_));
    }
    return;
  }
  const auto& tr = spec.triplet();
  gauss_var_ = 2.0 * tr.sigma * tr.sigma;
  double drift = tr.gamma;
  for (const auto& p : tr.measure.pieces()) {
    if (p.weight == 0.0) continue;
    const double sign = p.side == Side::positive ? 1.0 : -1.0;
    const double thr = p.finite_mass() ? 0.0 : eps;
    // Jumps below thr are compensated inside the Gaussian; those in [thr, 1) were
    // compensated by gamma and must be removed from the drift (added for thr > 1).
    if (thr < 1.0)
      drift -= sign * p.first_moment_between(thr, 1.0);
    else if (thr > 1.0)
      drift += sign * p.first_moment_between(1.0, thr);
    gauss_var_ += p.second_moment_below(thr);
    const double mass = p.tail(thr);
    if (!std::isfinite(mass)) throw UnsupportedSpecError("jump component with infinite mass above the cutoff");
    rate_ += mass;
    sources_.push_back({sign, p.weight, p.decay, p.index, thr, rate_});
  }
  drift_ = drift;
  if (rate_ == 0.0 && gauss_var_ == 0.0 && drift_ == 0.0) throw UnsupportedSpecError("degenerate process");
}

double IncrementSampler::increment(double dt, Rng& rng) const {
  if (!stable_) {
    double x = 0.0;
    advance(x, dt, rng, [](double) { return false; });
    return x;
  }
  // Paths reuse a handful of step sizes; keep the last (scale dt)^{1/alpha}.
  thread_local struct {
    const IncrementSampler* owner = nullptr;
    double dt = 0.0;
    double factor = 0.0;
  } cache;
  if (cache.owner != this || cache.dt != dt) {
    cache = {this, dt, std::pow(scale_ * dt, 1.0 / alpha_)};
  }
  if (alpha_ == 2.0) return cache.factor * std::sqrt(2.0) * std::normal_distribution<double>()(rng);
  const double v = std::uniform_real_distribution<double>(-std::numbers::pi / 2, std::numbers::pi / 2)(rng);
  if (alpha_ == 1.0) return cache.factor * std::tan(v);
  const double w = std::exponential_distribution<double>(1.0)(rng);
  const double a = alpha_ * (v + cms_b_);
  // S sin(a) cos(v)^{-1/alpha} (cos(v - a) / w)^{(1 - alpha)/alpha}
  const double log_mag = -std::log(std::cos(v)) / alpha_ + (1.0 - alpha_) / alpha_ * std::log(std::cos(v - a) / w);
  return cache.factor * cms_s_ * std::sin(a) * std::exp(log_mag);
}

double IncrementSampler::continuous(double dt, Rng& rng) const {
  double x = drift_ * dt;
  if (gauss_var_ > 0.0) x += std::sqrt(gauss_var_ * dt) * std::normal_distribution<double>()(rng);
  return x;
}

double IncrementSampler::jump(Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, rate_)(rng);
  for (const auto& s : sources_)
    if (u < s.cumulative_rate) return s.sign * jump_size(s, rng);
  return sources_.back().sign * jump_size(sources_.back(), rng);
}

// Exact draw from the density weight e^{-decay u} u^{-1-index} restricted to u >= threshold.
double IncrementSampler::jump_size(const JumpSource& s, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (s.index > 0.0) {
    // Pareto proposal, accepted with probability e^{-decay (u - threshold)}.
    for (;;) {
      const double u = s.threshold * std::pow(1.0 - unif(rng), -1.0 / s.index);
      if (s.decay == 0.0 || unif(rng) < std::exp(-s.decay * (u - s.threshold))) return u;
    }
  }
  if (s.index == 0.0) {
    // Shifted exponential proposal, accepted with probability threshold / u.
    for (;;) {
      const double u = s.threshold + std::exponential_distribution<double>(s.decay)(rng);
      if (unif(rng) * u < s.threshold) return u;
    }
  }
  // index < 0: Gamma(-index, decay), rejecting draws below the threshold.
  std::gamma_distribution<double> gamma(-s.index, 1.0 / s.decay);
  for (;;) {
    const double u = gamma(rng);
    if (u >= s.threshold && u > 0.0) return u;
  }
}

}  // namespace levy
