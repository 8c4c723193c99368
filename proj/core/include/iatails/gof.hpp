#pragma once

#include <string>
#include <vector>

#include "iatails/coupled.hpp"

namespace iatails {

struct MseReport {
  double mse = 0.0;
  double sd = 0.0;  // standard deviation of the squared errors
  double se = 0.0;  // standard error of the MSE
};

// Mean squared error of a list of estimates against the truth, plus the
// across-trial spread of the squared errors.
MseReport mse_report(const std::vector<double>& estimates, double truth);

// Cramer-von Mises W^2 = 1/(12n) + sum (F(x_(i)) - (2i-1)/(2n))^2.
double cvm(const std::vector<double>& samples, const CoupledParams& fitted);

// Average deviation: mean |x_(i) - Q((i-0.5)/n)| over the order
// statistics (mean absolute quantile deviation).
double avg_deviation(const std::vector<double>& samples,
                     const CoupledParams& fitted);

// Negative log-likelihood of the fitted model on the samples.
double nll_metric(const std::vector<double>& samples,
                  const CoupledParams& fitted);

// One Monte Carlo cell: per-method metric aggregates across trials.
struct TrialReport {
  std::string method_tag;
  double kappa_true = 0.0;
  double sigma_true = 0.0;
  MseReport mse_kappa;
  MseReport mse_sigma;
  double ad = 0.0;
  double cvm_stat = 0.0;
  double nll = 0.0;
  int trials = 0;
  std::size_t n_per_trial = 0;
  int failures = 0;  // trials whose fit raised a numeric error
};

}  // namespace iatails
