#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "iatails/rng.hpp"

namespace iatails {

enum class DispersionStat { mad, sd };
enum class IaMethod { ia, ia_gm };

// Controls the independent-approximates subsample selection.
struct IAConfig {
  int tuple_size = 2;           // 2, 3 or 5
  int permutations = 25;
  std::size_t k_min = 10;
  std::size_t k_max = 0;        // 0 -> min(floor(N/n), 200)
  DispersionStat selection_stat = DispersionStat::mad;
};

struct EstimateResult {
  double sigma_hat = 0.0;
  double kappa_hat = 0.0;
  std::size_t k_selected = 0;        // subsample count chosen for sigma
  std::size_t k_selected_kappa = 0;  // ditto for the kappa statistic (IA)
  std::vector<double> per_permutation_estimates;  // sigma, one per permutation
  double dispersion_at_k = 0.0;
  double epsilon_at_k = 0.0;  // spread of the k-th selected tuple
  std::string method_tag;     // "IA", "IA_GM" or "ML"
  // ML diagnostics (unused for IA methods).
  double nll_at_optimum = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  int restarts_used = 0;
  std::size_t log_zero_excluded = 0;  // zeros skipped by the log-average
};

using Tuple = std::vector<double>;

// Uniformly random partition into floor(N/n) n-tuples; N mod n samples
// are discarded.
std::vector<Tuple> partition_tuples(const std::vector<double>& samples, int n,
                                    RandomStream rs);

// max - min of the tuple values.
double tuple_spread(const Tuple& t);

// Sort tuples by ascending spread, keep the k tightest, return each
// tuple's median (pairs: midpoint).
std::vector<double> ia_medians(std::vector<Tuple> tuples, std::size_t k);

struct KSelection {
  std::size_t k_star = 0;
  std::vector<double> estimates;  // per-permutation statistic at k_star
  double dispersion = 0.0;
  double epsilon = 0.0;  // spread of the k-th tuple, first permutation
};

// For each candidate k in [k_min, k_max], evaluate `statistic` on the
// top-k medians of each of P random permutations; pick the k minimizing
// the cross-permutation dispersion (MAD about the median by default).
KSelection select_optimal_k(
    const std::vector<double>& samples, const IAConfig& cfg, RandomStream rs,
    const std::function<double(const std::vector<double>&)>& statistic);

// Full IA / IA_GM fit. alpha=1 treats samples as one-sided; alpha=2
// folds to |x| first. The location is assumed known and zero.
EstimateResult ia_fit(const std::vector<double>& samples, int alpha,
                      IaMethod method, const IAConfig& cfg, RandomStream rs);

struct ConsistencyCurve {
  std::vector<std::size_t> counts;
  std::vector<double> var_sigma;
  std::vector<double> var_kappa;
  double slope_sigma = 0.0;  // log-log slope of Var vs count
  double slope_kappa = 0.0;
};

// Empirical variance of (sigma, kappa) estimates from exactly sampled
// independent-equals tuples, as a function of the tuple count.
ConsistencyCurve lemma2_consistency_probe(double sigma, double kappa,
                                          const std::vector<std::size_t>& counts,
                                          int trials, RandomStream rs);

}  // namespace iatails
