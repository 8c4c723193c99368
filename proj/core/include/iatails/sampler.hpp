#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iatails/coupled.hpp"
#include "iatails/rng.hpp"

namespace iatails {

// Ordered numeric sample vector plus generation provenance.
struct SampleSet {
  std::vector<double> values;
  std::string generator;       // "coupled", "power-density", "gamma-mixture",
                               // "cnm", "stdmap", "file"
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string params;          // human-readable parameter echo
};

// Exact draws from the coupled family: inverse CDF for alpha=1,
// X = mu + sigma * T_nu (nu = 1/kappa) for alpha=2 (Gaussian at kappa=0).
SampleSet sample_coupled(std::size_t n, const CoupledParams& p,
                         RandomStream rs);

// Draws from the renormalized power-th power density — the exact
// independent-equals oracle.
SampleSet sample_power_density(std::size_t n, const CoupledParams& p,
                               int power, RandomStream rs);

// Gamma mixture of exponentials: rate ~ Gamma(1/kappa, kappa/sigma),
// then Exponential(1/rate). Equal in law to the one-sided coupled
// exponential (Type B identity).
SampleSet sample_gamma_mixture(std::size_t n, double sigma, double kappa,
                               RandomStream rs);

}  // namespace iatails
