#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "levy/model/process.hpp"
#include "levy/spectral/spectral.hpp"

namespace levy {

struct LadderOptions {
  double t_lo = 1e-8;          // positivity cache range
  double t_hi = 1e8;
  std::size_t curve_points = 64;
  double anchor = 1.0;         // lambda at which kappa(0, .) is pinned by the direct formula
  // Fixed log-frequency panels reused across lambda when psi has a closed form.
  bool tabulate = true;
  double table_lambda_lo = 1e-6;
  double table_lambda_hi = 1e8;
  double table_panel = 0.05;
  // false: only the time axis is built; kappa_space then throws.
  bool space_axis = true;
};

// Ladder exponents on the two axes, normalised by kappa(1, 0) = 1:
//   kappa(z, 0) = exp(\int_0^\infty (e^{-s} - e^{-zs}) s^{-1} P(X_s >= 0) ds),
//   kappa(0, l) = exp(\int_0^\infty s^{-1} (e^{-s} P(X_s >= 0) - E(e^{-l X_s}; X_s >= 0)) ds).
// The space exponent is evaluated at one anchor from the second formula and
// elsewhere (including complex l, Re l > 0) from the Wiener-Hopf identity
//   log k(l) - log k(m) = -((l - m)/2 pi) \int_R log psi(xi) / ((m + i xi)(l + i xi)) dxi.
class LadderExponent {
 public:
  explicit LadderExponent(ProcessSpec spec, LadderOptions opt = {});

  double kappa_time(double z) const;
  double kappa_space(double lam) const;
  std::complex<double> kappa_space(std::complex<double> lam) const;
  std::complex<double> log_kappa_space(std::complex<double> lam) const;

  // Direct formula at a real lambda (slow; used for the anchor and as an oracle).
  double kappa_space_direct(double lam) const;

  // z^rho for strictly stable specs.
  std::optional<double> kappa_time_closed_form(double z) const;

  const PositivityCurve& positivity() const { return curve_; }
  const ProcessSpec& spec() const { return spec_; }
  const LadderOptions& options() const { return opt_; }
  LadderExponent dual() const { return LadderExponent(spec_.dual(), opt_); }

 private:
  double log_kappa_space_direct(double lam) const;
  std::complex<double> wiener_hopf_adaptive(std::complex<double> lam) const;
  std::optional<std::complex<double>> wiener_hopf_table(std::complex<double> lam) const;
  void build_table();

  ProcessSpec spec_;
  LadderOptions opt_;
  PositivityCurve curve_;
  double log_anchor_ = 0.0;
  // Gauss nodes xi_k = e^{v_k}, weights w_k (including d xi = xi dv) and log psi(xi_k).
  std::vector<double> table_xi_;
  std::vector<double> table_w_;
  std::vector<std::complex<double>> table_lp_;
};

}  // namespace levy
