#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace levy {

enum class Side { positive, negative };

inline Side opposite(Side s) { return s == Side::positive ? Side::negative : Side::positive; }
std::string to_string(Side s);

// One half-line component of a Levy measure with density
//   weight * exp(-decay |x|) * |x|^{-1-index}
// on the given side. decay = 0 gives a stable-type power law (index in (0,2));
// decay > 0 gives a tempered component (index < 2; index < 0 is finite activity,
// index = -1 is an exponential jump law).
struct PowerPiece {
  Side side = Side::positive;
  double weight = 0.0;
  double decay = 0.0;
  double index = 1.0;

  double density(double u) const;                     // u > 0, distance from the origin
  double tail(double r) const;                        // mass of [r, inf) on this side
  double second_moment_below(double r) const;         // \int_0^r u^2
  double first_moment_between(double a, double b) const;  // \int_a^b u, 0 <= a < b <= inf
  bool finite_mass() const { return index < 0.0; }
  bool finite_first_moment_at_infinity() const { return decay > 0.0 || index > 1.0; }
  // -\int_0^\infty (e^{i w u} - 1 - i w u 1_{u<1}) density(u) du
  std::complex<double> exponent_on_positive_axis(double w) const;

 private:
  std::complex<double> exponent_series(double w) const;
};

// A Levy measure on R \ {0} made of PowerPiece components. Every component has
// closed-form tails, truncated moments and exponent contribution; quadrature
// routes over density() are kept separately as oracles.
class LevyMeasure {
 public:
  LevyMeasure() = default;
  explicit LevyMeasure(std::vector<PowerPiece> pieces);

  double density(double x) const;
  double upper_tail(double r) const;  // nu(r, inf)
  double lower_tail(double r) const;  // nu(-inf, -r)
  double tail(Side side, double r) const;
  double second_moment_below(double r) const;  // \int_{|x|<r} x^2 nu(dx)
  // \int_{a <= |x| < b} x nu(dx) (signed), 0 <= a <= b <= inf.
  double first_moment_annulus(double a, double b) const;
  // \int_{|x|>=r} x nu(dx) if \int_{|x|>=r}|x| nu(dx) < inf.
  std::optional<double> first_moment_beyond(double r) const;
  std::optional<double> total_mass() const;  // nullopt when infinite
  double mass_beyond(double r) const { return upper_tail(r) + lower_tail(r); }
  // -\int (e^{i xi x} - 1 - i xi x 1_{|x|<1}) nu(dx)
  std::complex<double> exponent(double xi) const;

  LevyMeasure reflected() const;
  bool empty() const { return pieces_.empty(); }
  bool one_sided(Side side) const;  // all mass on `side` (or none)
  bool symmetric() const;
  std::span<const PowerPiece> pieces() const { return pieces_; }

 private:
  std::vector<PowerPiece> pieces_;
};

// Numerical checks of the measure's invariants. Throws SpecError on failure.
struct MeasureCheck {
  double integral_one_wedge_x2 = 0.0;  // \int (1 ^ x^2) nu(dx) by quadrature
  double worst_tail_mismatch = 0.0;    // max relative |tail - \int density|
};
MeasureCheck validate_measure(const LevyMeasure& m);

}  // namespace levy
