#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "levy/error.hpp"
#include "levy/model/exponent.hpp"
#include "levy/model/presets.hpp"
#include "levy/numerics/grid.hpp"
#include "levy/numerics/quadrature.hpp"

using namespace levy;

namespace {

void expect_close(std::complex<double> a, std::complex<double> b, double rel) {
  const double scale = std::max(std::abs(b), 1e-300);
  EXPECT_LE(std::abs(a - b) / scale, rel) << "got " << a << " expected " << b;
}

}  // namespace

TEST(Psi, VanishesAtZero) {
  for (const auto& name : preset_names()) EXPECT_EQ(psi(preset(name), 0.0), std::complex<double>(0.0, 0.0)) << name;
}

TEST(Psi, BrownianIsXiSquared) {
  const auto bm = ProcessSpec::brownian(1.0);
  for (double xi : {-3.0, 0.1, 2.0}) expect_close(psi(bm, xi), {xi * xi, 0.0}, 1e-15);
}

TEST(Psi, SymmetricStableQuadratureMatchesPowerLaw) {
  const auto s = ProcessSpec::stable(1.5, 0.0, 0.7);
  for (double xi : log_grid(1e-3, 1e3, 13)) {
    const auto q = psi_quadrature(s.triplet(), xi);
    expect_close(q, {0.7 * std::pow(xi, 1.5), 0.0}, 1e-6);
  }
}

TEST(Psi, ClosedFormMatchesQuadratureForEveryPreset) {
  for (const auto& name : preset_names()) {
    const auto spec = preset(name);
    for (double xi : {-50.0, -2.0, -0.01, 0.003, 0.7, 9.0, 300.0}) {
      const auto q = psi_quadrature(spec.triplet(), xi);
      const auto c = *spec.closed_form_psi(xi);
      expect_close(q, c, 1e-6);
    }
  }
}

TEST(Psi, AsymmetricStableAndOneSidedUnitIndex) {
  for (auto spec : {ProcessSpec::stable(1.2, -0.7, 2.0), ProcessSpec::stable(0.6, 0.4, 1.0),
                    ProcessSpec::stable(1.0, 0.0, 1.3)}) {
    for (double xi : {-7.0, -0.2, 0.05, 1.0, 40.0})
      expect_close(psi_quadrature(spec.triplet(), xi), *spec.closed_form_psi(xi), 1e-6);
  }
  OneSidedParams p{Side::positive, 0.0, 1.0, 0.0, 1.0, 0.0};
  p.decay = 0.5;
  const auto tempered_cauchy = ProcessSpec::one_sided(p);
  for (double xi : {-3.0, 0.2, 11.0})
    expect_close(psi_quadrature(tempered_cauchy.triplet(), xi), *tempered_cauchy.closed_form_psi(xi), 1e-6);
}

TEST(Psi, SymmetryProperties) {
  for (const auto& name : preset_names()) {
    const auto spec = preset(name);
    for (double xi : log_grid(1e-3, 1e3, 7)) {
      const auto p = psi(spec, xi);
      const auto m = psi(spec, -xi);
      EXPECT_GE(p.real(), 0.0);
      EXPECT_NEAR(p.real(), m.real(), 1e-12 * (1 + p.real()));
      EXPECT_NEAR(p.imag(), -m.imag(), 1e-12 * (1 + std::abs(p.imag())));
      if (spec.symmetric()) EXPECT_LT(std::abs(p.imag()), 1e-8 * (1 + p.real()));
    }
  }
}

TEST(Psi, DualOfDualIsOriginal) {
  for (const auto& name : preset_names()) {
    const auto spec = preset(name);
    const auto back = spec.dual().dual();
    for (double xi : {-4.0, 0.3, 17.0}) {
      expect_close(psi(back, xi), psi(spec, xi), 1e-13);
      expect_close(psi(spec.dual(), xi), std::conj(psi(spec, xi)), 1e-12);
    }
  }
}

TEST(Triplet, RejectsCompoundPoisson) {
  BrownianJumpsParams p;
  p.sigma = 0.0;
  p.law = JumpLaw::exponential_up;
  // Mean equal to the jump mean leaves no drift: pure compound Poisson.
  p.mean = 1.0 / p.eta_up * p.rate;
  EXPECT_THROW(ProcessSpec::brownian_with_jumps(p), SpecError);
  p.mean = 0.0;
  EXPECT_NO_THROW(ProcessSpec::brownian_with_jumps(p));
}

TEST(Triplet, RejectsInvalidParameters) {
  EXPECT_THROW(ProcessSpec::stable(2.5), SpecError);
  EXPECT_THROW(ProcessSpec::stable(1.0, 0.5), SpecError);
  EXPECT_THROW(ProcessSpec::cgmy({1, 1, 1, 1, 2.0, 0, 0}), SpecError);
  EXPECT_THROW(ProcessSpec::brownian(-1.0).triplet(), SpecError);
}

TEST(MeanX1, Cases) {
  EXPECT_NEAR(*mean_x1(preset("stable-sym-1.5")), 0.0, 1e-15);
  EXPECT_FALSE(mean_x1(ProcessSpec::stable(0.5)).has_value());
  EXPECT_NEAR(*mean_x1(preset("cgmy-zero-mean")), 0.0, 1e-8);
  EXPECT_NEAR(*mean_x1(preset("closing-example")), 0.0, 1e-8);
}

TEST(MeanX1, ZeroMeanCgmyGammaAgreesWithTailQuadrature) {
  // Independent route: gamma = -\int_{|x|>=1} x nu(dx) by direct quadrature of the density.
  const auto spec = preset("cgmy-zero-mean");
  const auto& t = spec.triplet();
  auto up = quad::integrate_to_infinity([&](double x) { return x * t.measure.density(x); }, 1.0, 1.0);
  auto down = quad::integrate_to_infinity([&](double x) { return x * t.measure.density(-x); }, 1.0, 1.0);
  EXPECT_NEAR(t.gamma, -(up.value - down.value), 1e-8);
}

TEST(Wlsc, ExactPowers) {
  const auto grid = log_grid(1e-3, 1e3, 25);
  auto c = check_wlsc([](double x) { return x * x; }, 2.0, grid);
  EXPECT_NEAR(c.theta, 1.0, 1e-12);
  const auto s = preset("stable-sym-1.5");
  c = check_wlsc([&](double x) { return psi(s, x).real(); }, 1.5, grid);
  EXPECT_NEAR(c.theta, 1.0, 1e-12);
  const auto cg = preset("cgmy-zero-mean");
  c = check_wlsc([&](double x) { return psi(cg, x).real(); }, 1.4, grid);
  EXPECT_GT(c.theta, 0.0);
  EXPECT_LE(c.theta, 1.0 + 1e-12);
  EXPECT_THROW(check_wlsc([](double) { return 0.0; }, 1.0, grid), Error);
}

TEST(Gates, Presets) {
  EXPECT_TRUE(evaluate_gates(preset("stable-sym-1.5")).wlsc_above_one);
  EXPECT_FALSE(evaluate_gates(preset("stable-sym-0.8")).wlsc_above_one);
  const auto g = evaluate_gates(preset("cgmy-zero-mean"));
  EXPECT_TRUE(g.zero_mean);
  EXPECT_TRUE(g.wlsc_above_one);
  EXPECT_NEAR(g.scaling_index, 1.4, 0.05);
  EXPECT_TRUE(evaluate_gates(preset("closing-example")).wlsc_above_one);
}

TEST(Measure, ValidatesTailsAgainstDensity) {
  for (const auto& name : preset_names()) {
    const auto check = validate_measure(preset(name).triplet().measure);
    EXPECT_LT(check.worst_tail_mismatch, 1e-6) << name;
  }
}
