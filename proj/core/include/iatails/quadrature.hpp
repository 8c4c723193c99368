#pragma once

#include <functional>

namespace iatails::quad {

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
// Subdivides until the local error estimate is below the budgeted
// absolute tolerance; throws numeric_error when the depth limit is hit
// before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Integral over (a, +inf) using x = a + scale*t/(1-t).
// `scale` should be on the order of the integrand's decay length.
double integrate_upper(const std::function<double(double)>& f, double a,
                       double scale, double abs_tol = 1e-10);

// Integral over the whole real line with even/odd-agnostic splitting at 0.
double integrate_line(const std::function<double(double)>& f, double scale,
                      double abs_tol = 1e-10);

}  // namespace iatails::quad
