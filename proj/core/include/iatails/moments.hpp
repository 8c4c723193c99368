#pragma once

#include "iatails/coupled.hpp"

namespace iatails {

// m-th centered moment of the renormalized n-th power of the one-sided
// coupled exponential (GPD), mu = 0:
//   (sigma/kappa)^m * m! * Gamma(-1-m+n+n/kappa) / Gamma(-1+n+n/kappa).
// Finite only for kappa < n/(m+1-n); throws moment_divergence_error
// outside that region.
double gpd_power_moment(int m, int n, double sigma, double kappa);

// Same for the two-sided coupled Gaussian (Student's t). Odd m -> 0;
// even m computed through the power-density parameter transform and
// Student's t moments. Requires kappa < n/(m+1-n).
double gauss_power_moment(int m, int n, double sigma, double kappa);

struct GpdInversion {
  double sigma_hat;
  double kappa_hat;
};

// Invert pair mean and triplet second moment to (sigma, kappa):
// sigma = 2*pair_mean, kappa = 2*sigma^2/(3*triplet_m2) - 3.
GpdInversion invert_gpd(double pair_mean, double triplet_m2);

// sigma = sqrt(3 * triplet_m2) for the coupled Gaussian.
double invert_gauss_sigma(double triplet_m2);

// kappa = (3*sigma^4/m4 - 25)/10 from the quintuplet fourth moment.
// May return a negative boundary value; callers decide how to report it.
double invert_gauss_kappa_quint(double m4, double sigma_hat);

// E[ln |X|] for mu = 0, by quadrature with log-substituted tails.
double theoretical_log_abs_mean(const CoupledParams& p);

// Solve theoretical_log_abs_mean(sigma_hat, kappa) = sample_log_mean for
// kappa on [1e-6, 20] by bracketed bisection; the map is monotone
// increasing in kappa. Throws no_solution_error (carrying the residual at
// both bracket ends) when the bracket has no sign change.
double solve_kappa_from_log_mean(double sample_log_mean, double sigma_hat,
                                 int alpha);

}  // namespace iatails
