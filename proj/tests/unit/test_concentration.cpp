#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "levy/concentration/concentration.hpp"
#include "levy/error.hpp"
#include "levy/model/presets.hpp"
#include "levy/numerics/grid.hpp"

using namespace levy;

TEST(Concentration, BrownianIsInverseSquare) {
  ConcentrationProfile p(ProcessSpec::brownian(1.0));
  for (double r : {0.01, 1.0, 30.0}) {
    EXPECT_NEAR(p.h(r), 1.0 / (r * r), 1e-14 / (r * r));
    EXPECT_NEAR(p.h_inv(1.0 / (r * r)), r, 1e-8 * r);
  }
}

TEST(Concentration, SymmetricStableClosedForm) {
  // Density c |x|^{-1-a} on both sides: h(r) = 2 c r^{-a} (1/(2-a) + 1/a).
  const double a = 1.5;
  const auto spec = preset("stable-sym-1.5");
  const double c = spec.triplet().measure.pieces()[0].weight;
  ConcentrationProfile p(spec);
  const double k = 2.0 * c * (1.0 / (2.0 - a) + 1.0 / a);
  for (double r : log_grid(1e-3, 1e3, 9)) {
    const double expected = k * std::pow(r, -a);
    EXPECT_NEAR(p.h(r), expected, 1e-12 * expected);
    EXPECT_NEAR(p.h_quadrature(r), expected, 1e-8 * expected);
    const double u = expected;
    EXPECT_NEAR(p.h_inv(u), std::pow(k / u, 1.0 / a), 1e-8 * r);
  }
}

TEST(Concentration, ClosedFormMatchesQuadratureAllPresets) {
  for (const auto& name : preset_names()) {
    ConcentrationProfile p(preset(name));
    for (double r : {1e-3, 0.2, 1.0, 7.0, 500.0}) {
      EXPECT_NEAR(p.h_quadrature(r), p.h(r), 1e-7 * p.h(r)) << name << " r=" << r;
      EXPECT_NEAR(p.b_quadrature(r), p.b(r), 1e-7 * (1.0 + std::abs(p.b(r)))) << name << " r=" << r;
    }
  }
}

TEST(Concentration, MonotoneAndScaling) {
  const auto grid = log_grid(1e-4, 1e4, 41);
  for (const auto& name : preset_names()) {
    ConcentrationProfile p(preset(name));
    for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LE(p.h(grid[i]), p.h(grid[i - 1])) << name;
    for (double r : grid)
      for (double lam : {1e-3, 0.1, 0.5, 1.0}) EXPECT_LE(lam * lam * p.h(lam * r), (1 + 1e-9) * p.h(r)) << name;
    EXPECT_DOUBLE_EQ(p.h(2.0), 1.0 * 1.0 * p.h(2.0));
  }
}

TEST(Concentration, InverseRoundTrip) {
  for (const auto& name : preset_names()) {
    ConcentrationProfile p(preset(name));
    for (double r : log_grid(1e-3, 1e3, 7)) {
      const double u = p.h(r);
      EXPECT_NEAR(p.h(p.h_inv(u)), u, 1e-8 * u) << name;
      EXPECT_NEAR(p.h_inv(u), r, 1e-7 * r) << name;
    }
  }
}

TEST(Concentration, InverseRangeErrorForFiniteMeasure) {
  OneSidedParams q{Side::positive, 0.0, 1.0, 1.0, -1.0, 0.0};
  q.mean = 0.5;  // finite exponential measure of mass 1 with a drift
  ConcentrationProfile p(ProcessSpec::one_sided(q));
  EXPECT_NEAR(p.h_upper(), 1.0, 1e-12);
  EXPECT_THROW(p.h_inv(2.0), RangeError);
  EXPECT_NO_THROW(p.h_inv(0.5));
}

TEST(Concentration, DriftCases) {
  ConcentrationProfile sym(preset("cgmy-sym"));
  ConcentrationProfile cg(preset("cgmy-zero-mean"));
  const double gamma = cg.spec().triplet().gamma;
  EXPECT_DOUBLE_EQ(cg.b(1.0), gamma);
  for (double r : {0.01, 0.3, 4.0, 100.0}) {
    EXPECT_NEAR(sym.b(r), sym.spec().triplet().gamma, 1e-14);
    // Zero mean: b_r = -\int_{|x|>=r} x nu(dx).
    const double beyond = *cg.spec().triplet().measure.first_moment_beyond(r);
    EXPECT_NEAR(cg.b(r), -beyond, 1e-7 * (1 + std::abs(beyond)));
    EXPECT_NEAR(cg.b_quadrature(r), -beyond, 1e-7 * (1 + std::abs(beyond)));
  }
}

TEST(Concentration, SandwichOverFourDecades) {
  for (const auto& name : preset_names()) {
    ConcentrationProfile p(preset(name));
    for (double r : log_grid(1e-2, 1e2, 9)) {
      const double s = p.sup_re_psi(r);
      EXPECT_GE(s, p.h(r) / 24.0) << name << " r=" << r;
      EXPECT_LE(s, 2.0 * p.h(r)) << name << " r=" << r;
    }
  }
}

TEST(Concentration, CsvColumns) {
  ConcentrationProfile p(preset("brownian"));
  const std::vector<double> grid{0.5, 1.0};
  const auto rows = concentration_table(p, grid);
  std::ostringstream os;
  write_concentration_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, 19), "r,h,b_r,sup_re_psi\n");
}
