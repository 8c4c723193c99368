#include "iatails/moments.hpp"

#include <cmath>
#include <string>

#include "iatails/errors.hpp"

namespace iatails {

double gpd_power_moment(int m, int n, double sigma, double kappa) {
  if (m < 0 || n < 1) throw domain_error("need moment order >= 0, power >= 1");
  if (!(sigma > 0.0) || !(kappa > 0.0)) {
    throw domain_error("gpd_power_moment requires sigma > 0 and kappa > 0");
  }
  // The m-th moment of the n-power density has tail exponent
  // m - (n + n/kappa); it is integrable iff kappa < n / (m + 1 - n),
  // which is also exactly the domain of the gamma ratio below.
  const int excess = m + 1 - n;
  if (excess > 0 && kappa >= static_cast<double>(n) / excess) {
    throw moment_divergence_error(
        "moment of order " + std::to_string(m) + " of the " +
        std::to_string(n) + "-power density diverges for kappa >= " +
        std::to_string(static_cast<double>(n) / excess));
  }
  if (m == 0) return 1.0;
  const double nk = n / kappa;
  const double log_val = m * std::log(sigma / kappa) + std::lgamma(m + 1.0) +
                         std::lgamma(-1.0 - m + n + nk) -
                         std::lgamma(-1.0 + n + nk);
  return std::exp(log_val);
}

double gauss_power_moment(int m, int n, double sigma, double kappa) {
  if (m < 0 || n < 1) throw domain_error("need moment order >= 0, power >= 1");
  if (!(sigma > 0.0) || !(kappa > 0.0)) {
    throw domain_error("gauss_power_moment requires sigma > 0 and kappa > 0");
  }
  if (m % 2 == 1) return 0.0;  // centered odd moments vanish by symmetry
  if (m == 0) return 1.0;
  const int excess = m + 1 - n;
  if (excess > 0 && kappa >= static_cast<double>(n) / excess) {
    throw moment_divergence_error(
        "moment of order " + std::to_string(m) + " of the " +
        std::to_string(n) + "-power density diverges for kappa >= " +
        std::to_string(static_cast<double>(n) / excess));
  }
  const CoupledParams pp =
      power_density_params(CoupledParams::gauss(sigma, kappa), n);
  const double s2 = pp.sigma * pp.sigma;
  const double k = pp.kappa;
  if (m == 2) return s2 / (1.0 - 2.0 * k);
  if (m == 4) return 3.0 * s2 * s2 / ((1.0 - 2.0 * k) * (1.0 - 4.0 * k));
  throw domain_error("even moments above order 4 not implemented");
}

GpdInversion invert_gpd(double pair_mean, double triplet_m2) {
  if (!(pair_mean > 0.0) || !(triplet_m2 > 0.0)) {
    throw domain_error("invert_gpd needs positive pair mean and triplet m2");
  }
  const double sigma_hat = 2.0 * pair_mean;
  const double kappa_hat =
      2.0 * sigma_hat * sigma_hat / (3.0 * triplet_m2) - 3.0;
  if (kappa_hat <= -1.0) {
    throw inversion_error("kappa inversion produced " +
                          std::to_string(kappa_hat) + " <= -1");
  }
  return {sigma_hat, kappa_hat};
}

double invert_gauss_sigma(double triplet_m2) {
  if (!(triplet_m2 > 0.0)) {
    throw domain_error("invert_gauss_sigma needs a positive second moment");
  }
  return std::sqrt(3.0 * triplet_m2);
}

double invert_gauss_kappa_quint(double m4, double sigma_hat) {
  if (!(m4 > 0.0) || !(sigma_hat > 0.0)) {
    throw domain_error("invert_gauss_kappa_quint needs positive inputs");
  }
  const double s4 = sigma_hat * sigma_hat * sigma_hat * sigma_hat;
  return (3.0 * s4 / m4 - 25.0) / 10.0;
}

double theoretical_log_abs_mean(const CoupledParams& p) {
  p.validate();
  if (p.mu != 0.0) throw domain_error("log-abs mean requires mu = 0");
  return expected_abs_functional(p, [](double u) { return std::log(u); });
}

double solve_kappa_from_log_mean(double sample_log_mean, double sigma_hat,
                                 int alpha) {
  if (!(sigma_hat > 0.0)) throw domain_error("sigma_hat must be > 0");
  CoupledParams p = alpha == 1 ? CoupledParams::gpd(sigma_hat, 0.0)
                               : CoupledParams::gauss(sigma_hat, 0.0);
  auto g = [&](double kappa) {
    p.kappa = kappa;
    return theoretical_log_abs_mean(p) - sample_log_mean;
  };
  double lo = 1e-6, hi = 20.0;
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (!(g_lo < g_hi)) {
    throw numeric_error("log-mean map is not increasing on the bracket");
  }
  if (g_lo > 0.0 || g_hi < 0.0) {
    throw no_solution_error(
        "no kappa in [1e-6, 20] matches the sample log mean (residuals " +
        std::to_string(g_lo) + " at 1e-6, " + std::to_string(g_hi) +
        " at 20)");
  }
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  for (int it = 0; it < 80 && hi - lo > 1e-11; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace iatails
