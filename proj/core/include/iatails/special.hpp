#pragma once

namespace iatails::special {

// ln B(a,b) via log-gamma; valid for a,b > 0.
double log_beta(double a, double b);

// Complete Beta function B(a,b).
double beta(double a, double b);

// Regularized incomplete beta I(x; a, b) for x in [0,1], a,b > 0.
// Continued-fraction evaluation with the symmetry reduction
// I(x;a,b) = 1 - I(1-x;b,a) applied when x is past the saddle.
double reg_inc_beta(double x, double a, double b);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace iatails::special
