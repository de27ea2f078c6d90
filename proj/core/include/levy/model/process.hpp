#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levy/model/levy_measure.hpp"

namespace levy {

// (sigma, gamma, nu) in the convention
//   psi(xi) = sigma^2 xi^2 - i gamma xi - \int (e^{i xi x} - 1 - i xi x 1_{(-1,1)}(x)) nu(dx),
// i.e. the Gaussian part contributes sigma^2 xi^2 (variance 2 sigma^2 t).
struct LevyTriplet {
  double sigma = 0.0;
  double gamma = 0.0;
  LevyMeasure measure;

  LevyTriplet reflected() const { return {sigma, -gamma, measure.reflected()}; }
  // Linear drift of a finite-variation process: gamma - \int_{|x|<1} x nu(dx).
  double finite_variation_drift() const;
};

// Throws SpecError when sigma < 0 or the triplet is compound Poisson.
void validate_triplet(const LevyTriplet& t);

struct StableParams {
  double alpha = 1.5;
  double beta = 0.0;
  double scale = 1.0;
};

struct CgmyParams {
  double c_plus = 1.0;
  double c_minus = 1.0;
  double g = 1.0;  // decay of the negative tail
  double m = 1.0;  // decay of the positive tail
  double y = 1.5;
  double sigma = 0.0;
  double mean = 0.0;  // E X_1; gamma is solved from it
};

enum class JumpLaw { exponential_up, exponential_down, double_exponential };

struct BrownianJumpsParams {
  double sigma = 1.0;
  double rate = 1.0;
  JumpLaw law = JumpLaw::exponential_up;
  double p_up = 1.0;       // probability of an upward jump (double_exponential)
  double eta_up = 1.0;     // rate of the upward exponential
  double eta_down = 1.0;   // rate of the downward exponential
  double mean = 0.0;
};

struct OneSidedParams {
  Side side = Side::negative;
  double sigma = 0.0;
  double weight = 1.0;
  double decay = 0.0;
  double index = 1.5;
  double mean = 0.0;
};

// Measure given directly as a list of components; no closed-form exponent is
// used for this family (psi always goes through quadrature).
struct RawTripletParams {
  double sigma = 0.0;
  double gamma = 0.0;
  std::vector<PowerPiece> pieces;
};

// Sum of power-law / tempered pieces with a Gaussian part and a prescribed mean
// (a closed-form exponent is available).
struct CompositeParams {
  double sigma = 0.0;
  double mean = 0.0;
  std::vector<PowerPiece> pieces;
};

using FamilyParams =
    std::variant<StableParams, CgmyParams, BrownianJumpsParams, OneSidedParams, CompositeParams, RawTripletParams>;

// Immutable description of a one-dimensional Levy process.
class ProcessSpec {
 public:
  explicit ProcessSpec(FamilyParams params, std::string label = {});

  static ProcessSpec stable(double alpha, double beta = 0.0, double scale = 1.0);
  static ProcessSpec brownian(double sigma = 1.0);
  static ProcessSpec cgmy(CgmyParams p);
  static ProcessSpec brownian_with_jumps(BrownianJumpsParams p);
  static ProcessSpec one_sided(OneSidedParams p);
  static ProcessSpec composite(CompositeParams p);
  static ProcessSpec raw(LevyTriplet t);

  const LevyTriplet& triplet() const { return triplet_; }
  const FamilyParams& params() const { return params_; }
  const std::string& label() const { return label_; }
  std::string family() const;

  bool has_closed_form_psi() const;
  // Closed-form exponent; nullopt when the family has none.
  std::optional<std::complex<double>> closed_form_psi(double xi) const;

  // Reflected process X^ = -X.
  ProcessSpec dual() const;

  bool symmetric() const;
  bool strictly_stable() const { return std::holds_alternative<StableParams>(params_); }
  // For strictly stable specs: P(X_t >= 0) (constant in t).
  std::optional<double> stable_positivity() const;
  std::optional<double> stable_alpha() const;

 private:
  ProcessSpec(FamilyParams params, LevyTriplet triplet, std::string label);

  FamilyParams params_;
  LevyTriplet triplet_;
  std::string label_;
};

// Triplet of each family (exposed for tests and the CLI).
LevyTriplet triplet_of(const FamilyParams& p);

}  // namespace levy
