#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "levy/model/process.hpp"

namespace levy {

// Named process specifications used by the configs, the CLI and the tests.
//   stable-sym-1.5        symmetric stable, psi = |xi|^1.5
//   stable-asym-1.5       stable alpha = 1.5, beta = 0.5
//   stable-skew-1.5       stable alpha = 1.5, beta = 1
//   stable-sym-0.8        symmetric stable, alpha = 0.8 (fails the alpha > 1 gate)
//   brownian              psi = xi^2
//   cgmy-zero-mean        C = 1, G = 2, M = 5, Y = 1.4, E X_1 = 0
//   cgmy-sym              C = 1, G = M = 3, Y = 1.4
//   bm-positive-jumps     sigma = 1, exponential(2) upward jumps at rate 1, E X_1 = 0
//   spectrally-negative   sigma = 1, tempered downward jumps, E X_1 = 0
//   closing-example       heavy untempered downward jumps, tempered upward jumps, E X_1 = 0
//   closing-example-mirrored   the dual of closing-example
//   closing-example-symmetric  symmetric variant (fails the tail-domination hypothesis)
ProcessSpec preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace levy
