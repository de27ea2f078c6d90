#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "levy/model/process.hpp"

namespace levy {

struct ConcentrationTolerance {
  double h_inv_rel = 1e-10;     // relative tolerance of h(h_inv(u)) = u
  double quadrature_rel = 1e-9; // quadrature routes (oracles)
};

// h(r) = sigma^2/r^2 + \int (1 ^ x^2/r^2) nu(dx), the truncated drift b_r and
// the inverse of h. Closed forms come from the measure components.
class ConcentrationProfile {
 public:
  explicit ConcentrationProfile(ProcessSpec spec, ConcentrationTolerance tol = {});

  double h(double r) const;
  double b(double r) const;
  // r with h(r) = u; RangeError when u lies outside (h(inf), h(0+)).
  double h_inv(double u) const;
  // Achievable values of h: (0, upper), upper = inf unless nu is finite and sigma = 0.
  double h_upper() const { return h_upper_; }

  // Quadrature over the density, split at |x| = r (independent of the closed forms).
  double h_quadrature(double r) const;
  // Annulus quadrature for b_r.
  double b_quadrature(double r) const;

  // sup_{|x| <= 1/r} Re psi(x) over 512 log-spaced points plus golden-section refinement.
  double sup_re_psi(double r) const;

  const ProcessSpec& spec() const { return spec_; }
  const ConcentrationTolerance& tolerance() const { return tol_; }

 private:
  ProcessSpec spec_;
  ConcentrationTolerance tol_;
  double h_upper_;
};

struct ConcentrationRow {
  double r;
  double h;
  double b;
  double sup_re_psi;
};
std::vector<ConcentrationRow> concentration_table(const ConcentrationProfile& p, std::span<const double> r_grid);
// Columns: r,h,b_r,sup_re_psi
void write_concentration_csv(std::ostream& os, std::span<const ConcentrationRow> rows);

}  // namespace levy
