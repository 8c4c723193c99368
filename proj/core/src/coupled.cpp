#include "iatails/coupled.hpp"

#include <cmath>
#include <string>

#include "iatails/errors.hpp"
#include "iatails/quadrature.hpp"
#include "iatails/special.hpp"

namespace iatails {

namespace {

// Below this the exponential/Gaussian limit branch is used.
constexpr double kZeroKappa = 1e-12;

bool is_zero_kappa(double kappa) { return kappa < kZeroKappa; }

// log Z for the default support of alpha (one-sided GPD, two-sided t).
double log_partition(double sigma, double kappa, int alpha) {
  if (alpha == 1) return std::log(sigma);
  if (is_zero_kappa(kappa)) {
    return std::log(sigma) + 0.5 * std::log(2.0 * 3.14159265358979323846);
  }
  return std::log(sigma) + special::log_beta(1.0 / (2.0 * kappa), 0.5) -
         0.5 * std::log(kappa);
}

// Two-sided CDF for kappa > 0 via the regularized incomplete beta.
double cdf_two_sided_heavy(double z_abs, bool upper_half, int alpha,
                           double kappa) {
  const double u = kappa * std::pow(z_abs, static_cast<double>(alpha));
  if (std::isinf(u)) return upper_half ? 1.0 : 0.0;
  const double inv_ak = 1.0 / (alpha * kappa);
  const double inv_a = 1.0 / alpha;
  if (!upper_half) {
    return 0.5 * special::reg_inc_beta(1.0 / (1.0 + u), inv_ak, inv_a);
  }
  return 0.5 + 0.5 * special::reg_inc_beta(u / (1.0 + u), inv_a, inv_ak);
}

// CDF using the natural two-sided convention regardless of p.support.
double cdf_symmetric(double x, const CoupledParams& p) {
  const double z = (x - p.mu) / p.sigma;
  const bool upper = z > 0.0;
  const double za = std::fabs(z);
  if (std::isinf(za)) return upper ? 1.0 : 0.0;
  if (is_zero_kappa(p.kappa)) {
    if (p.alpha == 2) return special::normal_cdf(z);
    return upper ? 1.0 - 0.5 * std::exp(-za) : 0.5 * std::exp(-za);
  }
  return cdf_two_sided_heavy(za, upper, p.alpha, p.kappa);
}

}  // namespace

CoupledParams CoupledParams::gpd(double sigma, double kappa, double mu) {
  CoupledParams p{1, mu, sigma, kappa, Support::one_sided};
  p.validate();
  return p;
}

CoupledParams CoupledParams::gauss(double sigma, double kappa, double mu) {
  CoupledParams p{2, mu, sigma, kappa, Support::two_sided};
  p.validate();
  return p;
}

void CoupledParams::validate() const {
  if (alpha != 1 && alpha != 2) {
    throw domain_error("alpha must be 1 or 2, got " + std::to_string(alpha));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw domain_error("sigma must be finite and > 0");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw domain_error("kappa must be finite and >= 0");
  }
  if (!std::isfinite(mu)) throw domain_error("mu must be finite");
}

double log_pdf(double x, const CoupledParams& p) {
  p.validate();
  if (p.support == Support::one_sided && x < p.mu) {
    throw domain_error("x below location on one-sided support");
  }
  const double za = std::fabs(x - p.mu) / p.sigma;
  double shape_term;
  if (is_zero_kappa(p.kappa)) {
    shape_term = -std::pow(za, static_cast<double>(p.alpha)) / p.alpha;
  } else {
    shape_term =
        -(1.0 + p.kappa) / (p.alpha * p.kappa) *
        std::log1p(p.kappa * std::pow(za, static_cast<double>(p.alpha)));
  }
  double lz = log_partition(p.sigma, p.kappa, p.alpha);
  // Default supports are one-sided for alpha=1, two-sided for alpha=2;
  // the override halves or doubles the density.
  if (p.alpha == 1 && p.support == Support::two_sided) lz += std::log(2.0);
  if (p.alpha == 2 && p.support == Support::one_sided) lz -= std::log(2.0);
  return shape_term - lz;
}

double pdf(double x, const CoupledParams& p) { return std::exp(log_pdf(x, p)); }

double cdf(double x, const CoupledParams& p) {
  p.validate();
  if (p.support == Support::one_sided) {
    if (x < p.mu) {
      throw domain_error("x below location on one-sided support");
    }
    if (p.alpha == 1) {
      const double z = (x - p.mu) / p.sigma;
      if (is_zero_kappa(p.kappa)) return -std::expm1(-z);
      return -std::expm1(-std::log1p(p.kappa * z) / p.kappa);
    }
    // Folded two-sided law.
    return 2.0 * cdf_symmetric(x, p) - 1.0;
  }
  return cdf_symmetric(x, p);
}

double quantile(double prob, const CoupledParams& p) {
  p.validate();
  if (!(prob > 0.0 && prob < 1.0)) {
    throw domain_error("quantile probability must lie in (0,1)");
  }
  if (p.alpha == 1 && p.support == Support::one_sided) {
    if (is_zero_kappa(p.kappa)) return p.mu - p.sigma * std::log1p(-prob);
    return p.mu +
           p.sigma / p.kappa * std::expm1(-p.kappa * std::log1p(-prob));
  }
  if (p.alpha == 1 && p.support == Support::two_sided) {
    // Symmetric Laplace-type closed form.
    const double tail = prob <= 0.5 ? prob : 1.0 - prob;
    double za;
    if (is_zero_kappa(p.kappa)) {
      za = -std::log(2.0 * tail);
    } else {
      za = std::expm1(-p.kappa * std::log(2.0 * tail)) / p.kappa;
    }
    return prob <= 0.5 ? p.mu - p.sigma * za : p.mu + p.sigma * za;
  }

  // alpha = 2: numeric inversion of the symmetric CDF.
  double target = prob;
  bool mirrored = false;
  if (p.support == Support::one_sided) {
    target = 0.5 * (1.0 + prob);
  } else if (prob < 0.5) {
    target = 1.0 - prob;
    mirrored = true;
  }
  if (target == 0.5) return p.mu;

  CoupledParams ts = p;
  ts.support = Support::two_sided;
  double lo = p.mu;
  double hi = p.mu + p.sigma;
  int guard = 0;
  while (cdf_symmetric(hi, ts) < target) {
    lo = hi;
    hi = p.mu + 2.0 * (hi - p.mu);
    if (++guard > 2000) {
      throw numeric_error("quantile bracket expansion failed");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf_symmetric(mid, ts) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * (std::fabs(lo) + p.sigma)) break;
  }
  const double x = 0.5 * (lo + hi);
  return mirrored ? 2.0 * p.mu - x : x;
}

double partition_function(double sigma, double kappa, int alpha) {
  if (alpha != 1 && alpha != 2) throw domain_error("alpha must be 1 or 2");
  if (!(sigma > 0.0)) throw domain_error("sigma must be > 0");
  if (!(kappa >= 0.0)) throw domain_error("kappa must be >= 0");
  return std::exp(log_partition(sigma, kappa, alpha));
}

QBetaParams to_q_beta(const CoupledParams& p) {
  p.validate();
  const double q = 1.0 + p.alpha * p.kappa / (1.0 + p.kappa);
  const double beta =
      (1.0 + p.kappa) /
      (p.alpha * std::pow(p.sigma, static_cast<double>(p.alpha)));
  return {q, beta};
}

CoupledParams from_q_beta(double q, double beta, int alpha) {
  if (alpha != 1 && alpha != 2) throw domain_error("alpha must be 1 or 2");
  if (!(q >= 1.0 && q < 1.0 + alpha)) {
    throw domain_error("q must lie in [1, 1+alpha)");
  }
  if (!(beta > 0.0)) throw domain_error("beta must be > 0");
  const double kappa = (q - 1.0) / (alpha - (q - 1.0));
  const double sigma =
      std::pow((1.0 + kappa) / (alpha * beta), 1.0 / alpha);
  CoupledParams p{alpha, 0.0, sigma, kappa,
                  alpha == 1 ? Support::one_sided : Support::two_sided};
  p.validate();
  return p;
}

CoupledParams power_density_params(const CoupledParams& p, int n) {
  p.validate();
  if (n < 1) throw domain_error("density power must be >= 1");
  if (p.mu != 0.0) throw domain_error("power density requires mu = 0");
  if (is_zero_kappa(p.kappa)) {
    throw domain_error("power density transform requires kappa > 0");
  }
  const double denom = n + (n - 1) * p.kappa;
  CoupledParams out = p;
  out.kappa = p.kappa / denom;
  out.sigma = p.alpha == 1 ? p.sigma / denom : p.sigma / std::sqrt(denom);
  return out;
}

LogLogLandmarks loglog_landmarks(const CoupledParams& p) {
  p.validate();
  if (p.alpha != 2) {
    throw domain_error("log-log landmarks are defined for alpha = 2");
  }
  if (is_zero_kappa(p.kappa)) {
    throw domain_error(
        "half-slope and asymptotic-slope landmarks undefined at kappa = 0");
  }
  const double root = std::sqrt(1.0 + 2.0 * p.kappa);
  return {p.sigma / root, p.sigma * std::sqrt(3.0) / root,
          p.sigma / std::sqrt(p.kappa), p.sigma,
          -(1.0 + p.kappa) / p.kappa};
}

double superstatistics_mixture_pdf(double x, const CoupledParams& p,
                                   SuperstatVariant variant) {
  p.validate();
  if (p.alpha != 1) throw domain_error("superstatistics mixture needs alpha=1");
  if (is_zero_kappa(p.kappa)) {
    throw domain_error("superstatistics mixture needs kappa > 0");
  }
  if (x < p.mu) throw domain_error("x below location");
  const double y = x - p.mu;
  const double shape = 1.0 / p.kappa;
  const double scale = p.kappa / p.sigma;  // rate beta ~ Gamma(shape, scale)
  const double log_norm =
      -std::lgamma(shape) - shape * std::log(scale);
  auto integrand = [&](double b) {
    if (b <= 0.0) return 0.0;
    double lw = (shape - 1.0) * std::log(b) - b / scale + log_norm - b * y;
    if (variant == SuperstatVariant::B) lw += std::log(b);
    return std::exp(lw);
  };
  return quad::integrate_upper(integrand, 0.0, 1.0 / p.sigma, 1e-12);
}

double expected_abs_functional(const CoupledParams& p,
                               const std::function<double(double)>& g) {
  p.validate();
  // Substitute |x - mu| = sigma * exp(+-v): the inner piece (0, sigma]
  // and the tail [sigma, inf) both become smooth exponentially decaying
  // integrands in v.
  auto inner = [&](double v) {
    const double u = p.sigma * std::exp(-v);
    return g(u) * pdf(p.mu + u, p) * u;
  };
  auto outer = [&](double v) {
    const double u = p.sigma * std::exp(v);
    return g(u) * pdf(p.mu + u, p) * u;
  };
  const double outer_scale = std::max(1.0, 4.0 * p.kappa);
  double half = quad::integrate_upper(inner, 0.0, 1.0, 1e-11) +
                quad::integrate_upper(outer, 0.0, outer_scale, 1e-11);
  if (p.support == Support::two_sided) half *= 2.0;
  return half;
}

GeneralizedMeanCheck generalized_mean_density_check(const CoupledParams& p) {
  p.validate();
  if (p.mu != 0.0) throw domain_error("generalized mean check requires mu = 0");
  if (is_zero_kappa(p.kappa)) {
    throw domain_error("generalized mean check requires kappa > 0");
  }
  const double r = 1.0 + p.alpha * p.kappa / (1.0 + p.kappa);
  const double lhs = pdf(p.sigma, p);
  const double integral = expected_abs_functional(
      p, [&](double u) { return std::exp((r - 1.0) * log_pdf(p.mu + u, p)); });
  const double rhs =
      std::pow(integral, (1.0 + p.kappa) / (p.alpha * p.kappa));
  return {lhs, rhs};
}

double entropy(const CoupledParams& p) {
  return expected_abs_functional(
      p, [&](double u) { return -log_pdf(p.mu + u, p); });
}

}  // namespace iatails
