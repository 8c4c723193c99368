#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iatails/gof.hpp"
#include "iatails/ia.hpp"

namespace iatails {

// One Monte Carlo benchmark grid: for each kappa and each method, fit
// `trials` independent datasets of size n and aggregate the metrics.
struct StudyConfig {
  int alpha = 1;  // 1 = gpd family, 2 = gauss family
  double sigma = 0.5;
  std::vector<double> kappas;
  std::size_t n = 10000;
  int trials = 100;
  std::vector<std::string> methods;  // "ia", "ia-gm", "ml"
  IAConfig ia;
  std::uint64_t seed = 1;
};

// Rows ordered by (kappa, method). Per-trial work is distributed over
// the worker pool (IA_TAILS_THREADS); results are independent of the
// thread count because every trial uses its own child stream and writes
// to its own slot.
std::vector<TrialReport> run_mc_study(const StudyConfig& cfg);

// Exact column set:
// kappa_true,method,mse_kappa,sd_kappa,mse_sigma,sd_sigma,ad,cvm,nll,trials,n
std::string study_csv(const std::vector<TrialReport>& rows);
std::vector<TrialReport> parse_study_csv(const std::string& text);

}  // namespace iatails
