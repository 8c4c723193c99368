#pragma once

#include <cstdint>

#include "iatails/rng.hpp"
#include "iatails/sampler.hpp"

namespace iatails {

// Coherent noise model: threshold agents under exponentially distributed
// global stress. The output is the series of nonzero avalanche sizes
// (fraction of agents replaced), subsampled by stride.
struct CnmConfig {
  std::uint64_t n_agents = 100000;
  double sigma_stress = 0.05;
  std::uint64_t f = 8000;  // agents refreshed per step
  std::uint64_t steps = 1000000;
  std::uint64_t subsample_every = 100;
};

SampleSet cnm_run(const CnmConfig& cfg, RandomStream rs);

// Chirikov standard map sums: for each random initial condition iterate
//   y <- (y - K sin x) mod 2pi,  x <- (x + y) mod 2pi,
// discard the transient, then emit the centered scaled sum of x over
// sum_length iterates (one value per orbit).
struct StdMapConfig {
  double K = 0.8;
  std::uint64_t n_initial_conditions = 10000;
  std::uint64_t sum_length = 100000;
  std::uint64_t transient = 50000;
};

SampleSet stdmap_run(const StdMapConfig& cfg, RandomStream rs);

}  // namespace iatails
