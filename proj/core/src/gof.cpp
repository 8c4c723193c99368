#include "iatails/gof.hpp"

#include <algorithm>
#include <cmath>

#include "iatails/errors.hpp"
#include "iatails/mle.hpp"

namespace iatails {

MseReport mse_report(const std::vector<double>& estimates, double truth) {
  if (estimates.empty()) throw insufficient_data_error("no estimates");
  std::vector<double> sq;
  sq.reserve(estimates.size());
  double mse = 0.0;
  for (double e : estimates) {
    const double d = (e - truth) * (e - truth);
    sq.push_back(d);
    mse += d;
  }
  mse /= sq.size();
  double ss = 0.0;
  for (double d : sq) ss += (d - mse) * (d - mse);
  const double sd = sq.size() > 1 ? std::sqrt(ss / (sq.size() - 1)) : 0.0;
  return {mse, sd, sd / std::sqrt(static_cast<double>(sq.size()))};
}

double cvm(const std::vector<double>& samples, const CoupledParams& fitted) {
  if (samples.empty()) throw insufficient_data_error("no samples");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double w2 = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double u = cdf(sorted[i], fitted);
    const double target = (2.0 * (i + 1) - 1.0) / (2.0 * n);
    w2 += (u - target) * (u - target);
  }
  return w2;
}

double avg_deviation(const std::vector<double>& samples,
                     const CoupledParams& fitted) {
  if (samples.empty()) throw insufficient_data_error("no samples");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double total = 0.0;
  // The plotting positions are ascending, so each quantile is close to
  // the previous one: a warm-started Newton sweep beats a cold numeric
  // inversion per point (the alpha=1 quantile is closed-form anyway).
  double x = quantile(0.5 / n, fitted);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (i + 0.5) / n;
    bool ok = false;
    for (int it = 0; it < 40 && std::isfinite(x); ++it) {
      const double resid = cdf(x, fitted) - p;
      if (std::fabs(resid) < 1e-11) {
        ok = true;
        break;
      }
      const double step = resid / pdf(x, fitted);
      if (!std::isfinite(step) || !std::isfinite(x - step)) break;
      x -= step;
    }
    if (!ok) x = quantile(p, fitted);
    total += std::fabs(sorted[i] - x);
  }
  return total / n;
}

double nll_metric(const std::vector<double>& samples,
                  const CoupledParams& fitted) {
  return nll(fitted, samples);
}

}  // namespace iatails
