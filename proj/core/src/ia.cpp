#include "iatails/ia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iatails/errors.hpp"
#include "iatails/moments.hpp"
#include "iatails/sampler.hpp"

namespace iatails {

namespace {

constexpr std::size_t kDefaultKMaxCap = 200;

double median_of(std::vector<double> v) {
  if (v.empty()) throw insufficient_data_error("median of empty list");
  const std::size_t h = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + h, v.end());
  double m = v[h];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + h));
  }
  return m;
}

double dispersion_of(const std::vector<double>& est, DispersionStat stat) {
  if (stat == DispersionStat::mad) {
    const double med = median_of(est);
    double s = 0.0;
    for (double e : est) s += std::fabs(e - med);
    return s / est.size();
  }
  double mean = 0.0;
  for (double e : est) mean += e;
  mean /= est.size();
  double ss = 0.0;
  for (double e : est) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / est.size());
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double mean_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s / v.size();
}

double mean_p4(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x * x * x;
  return s / v.size();
}

// One permutation prepared for repeated top-k queries: medians and
// spreads sorted by ascending spread.
struct PreparedPermutation {
  std::vector<double> medians;
  std::vector<double> spreads;
};

PreparedPermutation prepare(const std::vector<double>& samples, int n,
                            RandomStream rs) {
  const std::size_t tuples = samples.size() / static_cast<std::size_t>(n);
  if (tuples == 0) {
    throw insufficient_data_error("fewer samples than the tuple size");
  }
  std::vector<double> perm = samples;
  rs.shuffle(perm);
  std::vector<std::pair<double, double>> spread_median;
  spread_median.reserve(tuples);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < tuples; ++i) {
    for (int j = 0; j < n; ++j) t[j] = perm[i * n + j];
    std::sort(t.begin(), t.end());
    const double spread = t.back() - t.front();
    const double med = n % 2 == 1 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
    spread_median.emplace_back(spread, med);
  }
  std::stable_sort(spread_median.begin(), spread_median.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  PreparedPermutation out;
  out.medians.reserve(tuples);
  out.spreads.reserve(tuples);
  for (const auto& [s, m] : spread_median) {
    out.spreads.push_back(s);
    out.medians.push_back(m);
  }
  return out;
}

KSelection run_selection(
    const std::vector<double>& samples, const IAConfig& cfg, RandomStream rs,
    const std::function<double(const std::vector<double>&)>& statistic) {
  const int n = cfg.tuple_size;
  if (n < 2) throw domain_error("tuple size must be >= 2");
  if (cfg.permutations < 1) throw domain_error("need at least 1 permutation");
  const std::size_t tuples = samples.size() / static_cast<std::size_t>(n);
  std::size_t k_max = cfg.k_max == 0 ? std::min(tuples, kDefaultKMaxCap)
                                     : std::min(cfg.k_max, tuples);
  if (cfg.k_min < 2 || cfg.k_min > k_max) {
    throw insufficient_data_error("no feasible subsample count in [k_min, k_max]");
  }

  std::vector<PreparedPermutation> perms;
  perms.reserve(cfg.permutations);
  for (int p = 0; p < cfg.permutations; ++p) {
    perms.push_back(prepare(samples, n, rs.child(p)));
  }

  KSelection best;
  double best_disp = std::numeric_limits<double>::infinity();
  std::vector<double> top_k;
  std::vector<double> est(perms.size());
  for (std::size_t k = cfg.k_min; k <= k_max; ++k) {
    for (std::size_t p = 0; p < perms.size(); ++p) {
      top_k.assign(perms[p].medians.begin(), perms[p].medians.begin() + k);
      est[p] = statistic(top_k);
    }
    const double disp = dispersion_of(est, cfg.selection_stat);
    if (disp < best_disp) {
      best_disp = disp;
      best.k_star = k;
      best.estimates = est;
      best.dispersion = disp;
      best.epsilon = perms[0].spreads[k - 1];
    }
  }
  return best;
}

// Mean of ln|x| over all samples, skipping exact zeros.
std::pair<double, std::size_t> log_abs_mean(const std::vector<double>& samples) {
  double s = 0.0;
  std::size_t used = 0, zeros = 0;
  for (double x : samples) {
    const double a = std::fabs(x);
    if (a == 0.0) {
      ++zeros;
      continue;
    }
    s += std::log(a);
    ++used;
  }
  if (used == 0) throw insufficient_data_error("all samples are zero");
  return {s / used, zeros};
}

}  // namespace

std::vector<Tuple> partition_tuples(const std::vector<double>& samples, int n,
                                    RandomStream rs) {
  if (n < 1) throw domain_error("tuple size must be >= 1");
  const std::size_t tuples = samples.size() / static_cast<std::size_t>(n);
  if (tuples == 0) {
    throw insufficient_data_error("fewer samples than the tuple size");
  }
  std::vector<double> perm = samples;
  rs.shuffle(perm);
  std::vector<Tuple> out(tuples);
  for (std::size_t i = 0; i < tuples; ++i) {
    out[i].assign(perm.begin() + i * n, perm.begin() + (i + 1) * n);
  }
  return out;
}

double tuple_spread(const Tuple& t) {
  if (t.empty()) throw insufficient_data_error("empty tuple");
  const auto [mn, mx] = std::minmax_element(t.begin(), t.end());
  return *mx - *mn;
}

std::vector<double> ia_medians(std::vector<Tuple> tuples, std::size_t k) {
  if (k > tuples.size()) {
    throw insufficient_data_error("requested more tuples than available");
  }
  std::stable_sort(tuples.begin(), tuples.end(),
                   [](const Tuple& a, const Tuple& b) {
                     return tuple_spread(a) < tuple_spread(b);
                   });
  std::vector<double> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Tuple t = tuples[i];
    std::sort(t.begin(), t.end());
    const std::size_t n = t.size();
    out.push_back(n % 2 == 1 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]));
  }
  return out;
}

KSelection select_optimal_k(
    const std::vector<double>& samples, const IAConfig& cfg, RandomStream rs,
    const std::function<double(const std::vector<double>&)>& statistic) {
  return run_selection(samples, cfg, rs, statistic);
}

EstimateResult ia_fit(const std::vector<double>& samples, int alpha,
                      IaMethod method, const IAConfig& cfg, RandomStream rs) {
  if (alpha != 1 && alpha != 2) throw domain_error("alpha must be 1 or 2");
  std::vector<double> data = samples;
  if (alpha == 2) {
    for (double& x : data) x = std::fabs(x);
  }

  EstimateResult out;
  out.method_tag = method == IaMethod::ia ? "IA" : "IA_GM";

  if (alpha == 1) {
    IAConfig pair_cfg = cfg;
    pair_cfg.tuple_size = 2;
    const KSelection pairs = run_selection(data, pair_cfg, rs.child(1), mean_of);
    std::vector<double> sigma_perm(pairs.estimates.size());
    for (std::size_t p = 0; p < sigma_perm.size(); ++p) {
      sigma_perm[p] = 2.0 * pairs.estimates[p];
    }
    out.sigma_hat = median_of(sigma_perm);
    out.k_selected = pairs.k_star;
    out.per_permutation_estimates = sigma_perm;
    out.dispersion_at_k = pairs.dispersion;
    out.epsilon_at_k = pairs.epsilon;

    if (method == IaMethod::ia) {
      IAConfig tri_cfg = cfg;
      tri_cfg.tuple_size = 3;
      const KSelection tris = run_selection(data, tri_cfg, rs.child(2), mean_sq);
      std::vector<double> kappa_perm(tris.estimates.size());
      for (std::size_t p = 0; p < kappa_perm.size(); ++p) {
        kappa_perm[p] = 8.0 * pairs.estimates[p] * pairs.estimates[p] /
                            (3.0 * tris.estimates[p]) -
                        3.0;
      }
      out.kappa_hat = std::max(0.0, median_of(kappa_perm));
      out.k_selected_kappa = tris.k_star;
    } else {
      const auto [lm, zeros] = log_abs_mean(data);
      out.log_zero_excluded = zeros;
      out.kappa_hat = solve_kappa_from_log_mean(lm, out.sigma_hat, 1);
    }
    return out;
  }

  // alpha == 2: triplet second moment of |x| fixes sigma.
  IAConfig tri_cfg = cfg;
  tri_cfg.tuple_size = 3;
  const KSelection tris = run_selection(data, tri_cfg, rs.child(1), mean_sq);
  std::vector<double> sigma_perm(tris.estimates.size());
  for (std::size_t p = 0; p < sigma_perm.size(); ++p) {
    sigma_perm[p] = invert_gauss_sigma(tris.estimates[p]);
  }
  out.sigma_hat = median_of(sigma_perm);
  out.k_selected = tris.k_star;
  out.per_permutation_estimates = sigma_perm;
  out.dispersion_at_k = tris.dispersion;
  out.epsilon_at_k = tris.epsilon;

  if (method == IaMethod::ia) {
    IAConfig quint_cfg = cfg;
    quint_cfg.tuple_size = 5;
    const KSelection quints =
        run_selection(data, quint_cfg, rs.child(2), mean_p4);
    std::vector<double> kappa_perm(quints.estimates.size());
    for (std::size_t p = 0; p < kappa_perm.size(); ++p) {
      kappa_perm[p] =
          invert_gauss_kappa_quint(quints.estimates[p], sigma_perm[p]);
    }
    out.kappa_hat = std::max(0.0, median_of(kappa_perm));
    out.k_selected_kappa = quints.k_star;
  } else {
    const auto [lm, zeros] = log_abs_mean(data);
    out.log_zero_excluded = zeros;
    out.kappa_hat = solve_kappa_from_log_mean(lm, out.sigma_hat, 2);
  }
  return out;
}

ConsistencyCurve lemma2_consistency_probe(
    double sigma, double kappa, const std::vector<std::size_t>& counts,
    int trials, RandomStream rs) {
  const CoupledParams base = CoupledParams::gpd(sigma, kappa);
  ConsistencyCurve out;
  out.counts = counts;
  for (std::size_t ci = 0; ci < counts.size(); ++ci) {
    const std::size_t count = counts[ci];
    std::vector<double> sig_hats, kap_hats;
    sig_hats.reserve(trials);
    kap_hats.reserve(trials);
    for (int t = 0; t < trials; ++t) {
      RandomStream trial = rs.child(ci * 1000003ULL + t);
      const SampleSet pairs =
          sample_power_density(count, base, 2, trial.child(0));
      const SampleSet tris =
          sample_power_density(count, base, 3, trial.child(1));
      const double pm = mean_of(pairs.values);
      const double m2 = mean_sq(tris.values);
      sig_hats.push_back(2.0 * pm);
      kap_hats.push_back(8.0 * pm * pm / (3.0 * m2) - 3.0);
    }
    auto variance = [](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) m += x;
      m /= v.size();
      double ss = 0.0;
      for (double x : v) ss += (x - m) * (x - m);
      return ss / (v.size() - 1);
    };
    out.var_sigma.push_back(variance(sig_hats));
    out.var_kappa.push_back(variance(kap_hats));
  }
  auto slope = [&](const std::vector<double>& vars) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t n = vars.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::log(static_cast<double>(out.counts[i]));
      const double y = std::log(vars[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  out.slope_sigma = slope(out.var_sigma);
  out.slope_kappa = slope(out.var_kappa);
  return out;
}

}  // namespace iatails
