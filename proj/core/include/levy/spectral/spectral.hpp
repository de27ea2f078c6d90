#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "levy/bound_report.hpp"
#include "levy/model/process.hpp"
#include "levy/numerics/interp.hpp"

namespace levy {

struct FourierOptions {
  double cutoff = 40.0;  // truncate where t Re psi(xi) exceeds this
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
};

// Frequency scales of e^{-t psi}: t Re psi(scale) ~ 1, t Re psi(cutoff) > options.cutoff.
struct FrequencyWindow {
  double scale;
  double cutoff;
};
FrequencyWindow frequency_window(const ProcessSpec& spec, double t, const FourierOptions& opt = {});

// Transition density of X_t at x by Fourier inversion.
double density(const ProcessSpec& spec, double t, double x, const FourierOptions& opt = {});
// P(X_t <= x) by Gil-Pelaez inversion.
double cdf(const ProcessSpec& spec, double t, double x, const FourierOptions& opt = {});
// rho(t) = P(X_t >= 0).
double positivity(const ProcessSpec& spec, double t, const FourierOptions& opt = {});

// rho(t) tabulated on a log time grid and interpolated monotonically in log t
// (constant beyond the grid).
class PositivityCurve {
 public:
  PositivityCurve() = default;
  PositivityCurve(const ProcessSpec& spec, double t_lo = 1e-8, double t_hi = 1e8, std::size_t n = 64);

  double operator()(double t) const;
  double eta_lower() const { return eta_lower_; }
  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  MonotoneCubic interp_;
  double eta_lower_ = 0.0;
};

// Columns: t,rho
void write_positivity_csv(std::ostream& os, const PositivityCurve& curve);
// Columns: xi,re_psi,im_psi
void write_psi_csv(std::ostream& os, const ProcessSpec& spec, std::span<const double> xi_grid);

// max |Im psi| / Re psi over |xi| in [1e-4, 1e4] (|xi| >= 1 unless zero_mean).
BoundReport im_re_domination(const ProcessSpec& spec, bool zero_mean, std::span<const double> xi_grid = {});

// \int_R (1 - cos(x y)) Re(1/psi(y)) dy.
double ex3_integral(const ProcessSpec& spec, double x);
// ex3_integral(x) against 1/(|x| h(|x|)); pass when max/min ratio < band.
BoundReport ex3_report(const ProcessSpec& spec, std::span<const double> x_grid, double band = 50.0);

}  // namespace levy
