#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <gtest/gtest.h>

#include "levy/error.hpp"
#include "levy/fluctuation/reports.hpp"
#include "levy/model/presets.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/quadrature.hpp"

using namespace levy;

namespace {

const FluctuationModel& model(const std::string& name) {
  static std::map<std::string, std::unique_ptr<FluctuationModel>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<FluctuationModel>(preset(name));
  return *slot;
}

double stable_rho(double alpha, double beta) {
  return 0.5 + std::atan(beta * std::tan(std::numbers::pi * alpha / 2)) / (std::numbers::pi * alpha);
}

}  // namespace

TEST(Ladder, KappaTimeIsOneAtOne) {
  EXPECT_DOUBLE_EQ(model("cgmy-zero-mean").ladder.kappa_time(1.0), 1.0);
}

TEST(Ladder, SymmetricKappaTimeIsSqrt) {
  for (const char* name : {"stable-sym-1.5", "cgmy-sym"})
    for (double z : {1e-3, 1e-2, 1.0, 1e2, 1e3}) EXPECT_NEAR(model(name).ladder.kappa_time(z) / std::sqrt(z), 1.0, 1e-6) << name;
}

TEST(Ladder, StableKappaTimeIsPowerOfPositivity) {
  const auto& m = model("stable-asym-1.5");
  const double rho = stable_rho(1.5, 0.5);
  for (double z : {1e-3, 0.1, 10.0, 1e3}) {
    EXPECT_NEAR(m.ladder.kappa_time(z) / std::pow(z, rho), 1.0, 1e-6);
    EXPECT_NEAR(*m.ladder.kappa_time_closed_form(z) / std::pow(z, rho), 1.0, 1e-12);
  }
}

TEST(Ladder, TimeIdentityWithDual) {
  for (const char* name : {"stable-asym-1.5", "cgmy-zero-mean", "closing-example"}) {
    const auto& m = model(name);
    for (double z : {1e-3, 1e-2, 1.0, 1e2, 1e3})
      EXPECT_NEAR(m.ladder.kappa_time(z) * m.dual_ladder.kappa_time(z) / z, 1.0, 1e-6) << name << " z=" << z;
  }
}

TEST(Ladder, SymmetricStableSpaceExponent) {
  const auto& m = model("stable-sym-1.5");
  for (double l : {1e-3, 0.1, 1.0, 10.0, 1e3}) EXPECT_NEAR(m.ladder.kappa_space(l) / std::pow(l, 0.75), 1.0, 1e-8);
}

TEST(Ladder, BrownianSpaceExponentIsLinear) {
  const auto& m = model("brownian");
  for (double l : {1e-3, 0.5, 1.0, 7.0, 1e3}) EXPECT_NEAR(m.ladder.kappa_space(l) / l, 1.0, 1e-8);
}

TEST(Ladder, BrownianDirectRouteMatchesGaussianFormula) {
  // E(e^{-l X_s}; X_s > 0) = e^{l^2 s} erfc(l sqrt s) / 2 for variance 2s.
  const auto& m = model("brownian");
  for (double l : {0.5, 2.0}) {
    auto f = [&](double u) {
      const double s = std::exp(u);
      const double a = l * std::sqrt(s);
      const double a2 = a * a;
      // e^{a^2} erfc(a), asymptotic series once e^{a^2} would overflow.
      const double scaled = a < 20.0 ? boost::math::erfc(a) * std::exp(a2)
                                     : (1 - 1 / (2 * a2) + 3 / (4 * a2 * a2) - 15 / (8 * a2 * a2 * a2)) /
                                           (a * std::sqrt(std::numbers::pi));
      const double laplace = 0.5 * scaled;
      return 0.5 * std::exp(-s) - laplace;
    };
    const double oracle = std::exp(quad::integrate(f, std::log(1e-14), std::log(1e14), {1e-13, 1e-12, 4000}).value -
                                   1.0 / (l * std::sqrt(std::numbers::pi * 1e14)) + 2.0 * l * std::sqrt(1e-14 / std::numbers::pi));
    EXPECT_NEAR(m.ladder.kappa_space_direct(l) / oracle, 1.0, 1e-9);
  }
}

TEST(Ladder, WienerHopfRouteMatchesDirectFormula) {
  const auto& m = model("cgmy-zero-mean");
  for (double l : {0.1, 10.0}) EXPECT_NEAR(m.ladder.kappa_space(l) / m.ladder.kappa_space_direct(l), 1.0, 1e-7);
}

TEST(Ladder, TabulatedRouteMatchesAdaptive) {
  LadderOptions opt;
  opt.tabulate = false;
  const LadderExponent adaptive(preset("closing-example"), opt);
  const auto& m = model("closing-example");
  for (std::complex<double> l : {std::complex<double>(0.01, 0.3), {5.0, 40.0}, {300.0, 0.0}})
    EXPECT_LT(std::abs(m.ladder.kappa_space(l) / adaptive.kappa_space(l) - 1.0), 1e-10);
}

TEST(Ladder, SpaceExponentIsMonotone) {
  const auto& m = model("closing-example");
  double prev = 0.0;
  for (double l : log_grid(1e-3, 1e3, 13)) {
    const double k = m.ladder.kappa_space(l);
    EXPECT_GT(k, prev);
    prev = k;
  }
}

TEST(Renewal, InvertsExactPowerPairs) {
  RenewalOptions opt;
  const auto grid = renewal_grid(opt);
  for (double a : {0.6, 0.75, 0.9}) {
    // \int e^{-lx} x^a / Gamma(1+a) dx = l^{-1-a}.
    auto F = [&](std::complex<double> l) { return std::pow(l, -1.0 - a); };
    const auto V = invert_renewal_transform(F, grid, opt, "power pair");
    for (double x : grid) EXPECT_NEAR(V(x) / (std::pow(x, a) / std::tgamma(1.0 + a)), 1.0, 1e-4);
    EXPECT_LT(V.consistency(), 1e-4);
  }
}

TEST(Renewal, StehfestAlternativeAgrees) {
  RenewalOptions opt;
  opt.method = InversionMethod::stehfest;
  opt.x_lo = 1e-2;
  opt.x_hi = 1e2;
  const auto grid = renewal_grid(opt);
  auto F = [](std::complex<double> l) { return std::pow(l, -1.75); };
  const auto V = invert_renewal_transform(F, grid, opt, "power pair");
  EXPECT_EQ(V.method(), "laplace-stehfest");
  for (double x : grid) EXPECT_NEAR(V(x) / (std::pow(x, 0.75) / std::tgamma(1.75)), 1.0, 1e-3);
}

TEST(Renewal, InconsistentOrdersAbort) {
  RenewalOptions opt;
  opt.x_lo = 0.5;
  opt.x_hi = 2.0;
  auto F = [](std::complex<double> l) { return (1.0 + 0.1 * std::sin(50.0 * l.imag())) / l; };
  EXPECT_THROW(invert_renewal_transform(F, renewal_grid(opt), opt, "noise"), InversionError);
}

TEST(Renewal, SymmetricStableMatchesClosedForm) {
  const auto& m = model("stable-sym-1.5");
  const auto oracle = stable_renewal(m.spec, 1.0, m.V.x());
  for (double x : m.V.x()) EXPECT_NEAR(m.V(x) / oracle(x), 1.0, 1e-4);
  EXPECT_EQ(m.V(0.0), 0.0);
}

TEST(Renewal, SymmetricSpecIsSelfDual) {
  for (const char* name : {"stable-sym-1.5", "cgmy-sym"}) {
    const auto& m = model(name);
    for (double x : m.V.x()) EXPECT_NEAR(m.V_hat(x) / m.V(x), 1.0, 1e-6) << name;
  }
}

TEST(Renewal, StableSlopes) {
  const auto& m = model("stable-asym-1.5");
  const double rho = stable_rho(1.5, 0.5);
  EXPECT_NEAR(m.V.slope(1e-3, 1e3), 1.5 * rho, 0.01);
  EXPECT_NEAR(m.V_hat.slope(1e-3, 1e3), 1.5 * (1.0 - rho), 0.01);
  const auto oracle = stable_renewal(m.spec, m.ladder.kappa_space(1.0), m.V.x());
  for (double x : m.V.x()) EXPECT_NEAR(m.V(x) / oracle(x), 1.0, 1e-4);
}

TEST(Renewal, InvariantsHold) {
  for (const char* name : {"stable-asym-1.5", "cgmy-zero-mean", "bm-positive-jumps", "closing-example"}) {
    const auto& m = model(name);
    EXPECT_TRUE(check_invariants(m.V).holds()) << name;
    EXPECT_TRUE(check_invariants(m.V_hat).holds()) << name;
  }
}

TEST(Renewal, SymmetricVComparableToSqrtH) {
  const auto& m = model("cgmy-sym");
  const auto ref = symmetric_sqrt_h(m.conc, log_grid(1e-2, 1e2, 9));
  double lo = 1e300;
  double hi = 0.0;
  for (double r : ref.x()) {
    lo = std::min(lo, m.V(r) / ref(r));
    hi = std::max(hi, m.V(r) / ref(r));
  }
  EXPECT_LT(hi / lo, 5.0);
}

TEST(Renewal, SpectrallyNegativeIsLinear) {
  const auto& m = model("spectrally-negative");
  EXPECT_NEAR(m.V.slope(1e-4, 1e4), 1.0, 1e-6);
}

TEST(FluctuationReports, KappaIdentityPasses) {
  const auto& m = model("cgmy-zero-mean");
  const auto rep = kappa_identity(m.ladder, m.dual_ladder, log_grid(1e-3, 1e3, 7));
  EXPECT_EQ(rep.verdict, Verdict::pass);
}

TEST(FluctuationReports, KappaScalingExactForStable) {
  for (const char* name : {"stable-sym-1.5", "stable-asym-1.5"}) {
    const auto rep = kappa_scaling_report(model(name).ladder, log_grid(1, 1e3, 4), log_grid(1, 1e3, 4));
    EXPECT_EQ(rep.verdict, Verdict::pass);
    EXPECT_NEAR(rep.metrics.at("c"), 1.0, 1e-5) << name;
  }
}

TEST(FluctuationReports, ProductBoundConstantForStable) {
  const auto rep = product_bound_report(model("stable-sym-1.5"), log_grid(1e-2, 1e2, 9));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_LT(rep.spread(), 1.0 + 1e-4);
  // h = 2c r^{-a}(1/(2-a) + 1/a) with c from psi = |xi|^a; V = r^{a/2}/Gamma(1+a/2).
  const double a = 1.5;
  const double c = a * (1 - a) / (2 * std::tgamma(2 - a) * std::cos(std::numbers::pi * a / 2));
  const double expected = 2 * c * (1 / (2 - a) + 1 / a) / std::pow(std::tgamma(1 + a / 2), 2);
  EXPECT_NEAR(rep.min_ratio / expected, 1.0, 1e-4);
}

TEST(FluctuationReports, ProductAndKappaEstBandedForCgmy) {
  const auto& m = model("cgmy-zero-mean");
  EXPECT_EQ(product_bound_report(m, log_grid(1e-2, 1e2, 9)).verdict, Verdict::pass);
  EXPECT_EQ(kappa_est_report(m, log_grid(1e-2, 1e2, 9)).verdict, Verdict::pass);
}

TEST(FluctuationReports, VScalingBrownianIsExact) {
  const auto rep = V_scaling_report(model("brownian").V, 2.0, log_grid(1e-2, 1e2, 5));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_NEAR(rep.min_ratio, 1.0, 1e-6);
  EXPECT_NEAR(rep.max_ratio, 1.0, 1e-6);
}

TEST(FluctuationReports, VigonConsistency) {
  const auto lam = log_grid(1e-2, 1e2, 9);
  for (const char* name : {"stable-sym-1.5", "cgmy-zero-mean", "bm-positive-jumps"}) {
    const auto rep = ladder_levy_consistency(model(name), lam);
    EXPECT_EQ(rep.verdict, Verdict::pass) << name << " " << rep.min_ratio << " " << rep.max_ratio;
  }
  const auto sn = ladder_levy_consistency(model("spectrally-negative"), lam);
  EXPECT_EQ(sn.verdict, Verdict::pass);
  EXPECT_FALSE(sn.reason.empty());
}

TEST(FluctuationReports, CreepingTriState) {
  const auto bm = creeping_condition(model("bm-positive-jumps"));
  EXPECT_EQ(bm.verdict, Condition::holds);
  EXPECT_NEAR(bm.v_slope, 1.0, 0.05);
  EXPECT_TRUE(bm.slope_consistent);
  const auto st = creeping_condition(model("stable-sym-1.5"));
  EXPECT_EQ(st.verdict, Condition::fails);
  EXPECT_NEAR(st.v_slope, 0.75, 0.05);
  EXPECT_TRUE(st.slope_consistent);
  EXPECT_EQ(creeping_condition(model("spectrally-negative")).verdict, Condition::holds);
}

TEST(FluctuationReports, LinearityLarge) {
  const auto cg = linearity_large_condition(model("cgmy-zero-mean"));
  EXPECT_EQ(cg.verdict, Condition::holds);
  EXPECT_NEAR(cg.v_slope, 1.0, 0.05);
  const auto st = linearity_large_condition(model("stable-sym-1.5"));
  EXPECT_EQ(st.verdict, Condition::fails);
  EXPECT_NEAR(st.v_slope, 0.75, 0.05);
  EXPECT_EQ(linearity_large_condition(model("closing-example-mirrored")).verdict, Condition::hypothesis_not_met);
  EXPECT_EQ(linearity_large_condition(model("spectrally-negative")).verdict, Condition::holds);
}
