#pragma once

#include <vector>

#include "iatails/coupled.hpp"
#include "iatails/ia.hpp"

namespace iatails {

// Negative log-likelihood, computed in log space (no underflow for
// |x| up to ~1e12 * sigma). Throws domain_error naming the index of any
// sample outside the support.
double nll(const CoupledParams& params, const std::vector<double>& samples);

// Maximum-likelihood fit of (sigma, kappa) with mu fixed at 0.
// Derivative-free simplex descent over (ln sigma, ln kappa) from a grid
// of starts (sigma in {0.5,1,2} * sample MAD, kappa in {0.1,1});
// kappa floored at 1e-6.
EstimateResult ml_fit(const std::vector<double>& samples, int alpha);

}  // namespace iatails
