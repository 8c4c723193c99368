#include "iatails/sampler.hpp"

#include <cmath>

#include "iatails/errors.hpp"

namespace iatails {

namespace {

std::string describe(const CoupledParams& p) {
  return "alpha=" + std::to_string(p.alpha) + " mu=" + std::to_string(p.mu) +
         " sigma=" + std::to_string(p.sigma) +
         " kappa=" + std::to_string(p.kappa);
}

double draw_coupled(const CoupledParams& p, RandomStream& rs) {
  if (p.alpha == 1) {
    return quantile(rs.uniform(), p);
  }
  // Student's t construction, exact for all nu = 1/kappa.
  double t;
  if (p.kappa < 1e-12) {
    t = rs.normal();
  } else {
    const double nu = 1.0 / p.kappa;
    const double z = rs.normal();
    const double w = rs.chi_square(nu);
    t = z / std::sqrt(w / nu);
  }
  double x = p.mu + p.sigma * t;
  if (p.support == Support::one_sided) x = p.mu + std::fabs(x - p.mu);
  return x;
}

}  // namespace

SampleSet sample_coupled(std::size_t n, const CoupledParams& p,
                         RandomStream rs) {
  p.validate();
  if (n < 1) throw domain_error("sample count must be >= 1");
  SampleSet out;
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.values.push_back(draw_coupled(p, rs));
  out.generator = "coupled";
  out.seed = rs.seed();
  out.stream_id = rs.stream_id();
  out.params = describe(p);
  return out;
}

SampleSet sample_power_density(std::size_t n, const CoupledParams& p,
                               int power, RandomStream rs) {
  const CoupledParams pp = power_density_params(p, power);
  SampleSet out = sample_coupled(n, pp, rs);
  out.generator = "power-density";
  out.params = describe(p) + " power=" + std::to_string(power);
  return out;
}

SampleSet sample_gamma_mixture(std::size_t n, double sigma, double kappa,
                               RandomStream rs) {
  if (!(sigma > 0.0) || !(kappa > 0.0)) {
    throw domain_error("gamma mixture requires sigma > 0 and kappa > 0");
  }
  SampleSet out;
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = rs.gamma(1.0 / kappa, kappa / sigma);
    out.values.push_back(rs.exponential(1.0 / rate));
  }
  out.generator = "gamma-mixture";
  out.seed = rs.seed();
  out.stream_id = rs.stream_id();
  out.params = "sigma=" + std::to_string(sigma) +
               " kappa=" + std::to_string(kappa);
  return out;
}

}  // namespace iatails
