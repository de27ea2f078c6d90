#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "levy/model/process.hpp"

namespace levy {

// Characteristic exponent: closed form when the family has one, quadrature otherwise.
std::complex<double> psi(const ProcessSpec& spec, double xi);

// Quadrature route over the triplet, split at |x| = 1/|xi| and |x| = 1.
// Throws QuadratureError with the achieved tolerance on failure.
std::complex<double> psi_quadrature(const LevyTriplet& t, double xi);

// E X_1 = gamma + \int_{|x|>=1} x nu(dx); nullopt when the first moment is infinite.
std::optional<double> mean_x1(const ProcessSpec& spec);

struct ScalingCertificate {
  double alpha = 0.0;
  double theta = 0.0;  // min_{x < y on grid} f(y) / ((y/x)^alpha f(x))
  double r_min = 0.0;
  double r_max = 0.0;
  double worst_ratio = 0.0;
  std::vector<double> grid;
};

// Weak lower scaling check of f with exponent alpha over all grid pairs.
// Throws Error when f is not positive on the grid.
ScalingCertificate check_wlsc(const std::function<double(double)>& f, double alpha, std::span<const double> grid);

// Largest exponent a with f(y)/f(x) >= (y/x)^a for every grid pair with y/x >= min_lambda.
double lower_scaling_index(const std::function<double(double)>& f, std::span<const double> grid,
                           double min_lambda = 10.0);

// Applicability gates shared by the verification harness.
struct Gates {
  std::optional<double> mean;  // E X_1
  bool zero_mean = false;
  double scaling_index = 0.0;  // lower scaling index of Re psi on [1e-4, 1e4]
  bool wlsc_above_one = false;
  bool unbounded_variation = false;
};
Gates evaluate_gates(const ProcessSpec& spec);

}  // namespace levy
