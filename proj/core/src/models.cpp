#include "iatails/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "iatails/errors.hpp"
#include "iatails/parallel.hpp"

namespace iatails {

SampleSet cnm_run(const CnmConfig& cfg, RandomStream rs) {
  if (cfg.f > cfg.n_agents) throw domain_error("f cannot exceed n_agents");
  if (!(cfg.sigma_stress > 0.0)) throw domain_error("sigma_stress must be > 0");
  if (cfg.n_agents == 0 || cfg.steps == 0) {
    throw domain_error("n_agents and steps must be positive");
  }

  // Agents are tracked as classes: every agent whose threshold was last
  // redrawn above stress level `a` is Uniform(a, 1); only (bound, count)
  // matters. The class list stays small, so each step is O(classes)
  // instead of O(n_agents).
  struct AgentClass {
    double bound;
    std::uint64_t count;
  };
  std::vector<AgentClass> classes{{0.0, cfg.n_agents}};
  std::vector<AgentClass> kept;
  const double refresh_p =
      static_cast<double>(cfg.f) / static_cast<double>(cfg.n_agents);

  SampleSet out;
  out.generator = "cnm";
  out.seed = rs.seed();
  out.stream_id = rs.stream_id();
  out.params = "n_agents=" + std::to_string(cfg.n_agents) +
               " sigma_stress=" + std::to_string(cfg.sigma_stress) +
               " f=" + std::to_string(cfg.f) +
               " steps=" + std::to_string(cfg.steps) +
               " subsample_every=" + std::to_string(cfg.subsample_every);

  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    const double eta = rs.exponential(cfg.sigma_stress);
    std::uint64_t dead = 0;
    std::uint64_t survivors = 0;
    kept.clear();
    for (const AgentClass& c : classes) {
      if (c.bound >= eta) {
        kept.push_back(c);
        continue;
      }
      if (eta >= 1.0) {
        dead += c.count;
        continue;
      }
      const double p = (eta - c.bound) / (1.0 - c.bound);
      const std::uint64_t k = rs.binomial(c.count, p);
      dead += k;
      survivors += c.count - k;
    }
    classes.swap(kept);
    if (survivors > 0) {
      auto it = std::find_if(classes.begin(), classes.end(),
                             [&](const AgentClass& c) { return c.bound == eta; });
      if (it != classes.end()) {
        it->count += survivors;
      } else {
        classes.push_back({eta, survivors});
      }
    }
    // Killed agents plus the per-step refresh fraction get fresh
    // Uniform(0,1) thresholds (refreshing a bound-0 agent is a no-op).
    std::uint64_t fresh = dead;
    for (AgentClass& c : classes) {
      if (c.bound == 0.0) continue;
      const std::uint64_t r = rs.binomial(c.count, refresh_p);
      c.count -= r;
      fresh += r;
    }
    classes.erase(std::remove_if(classes.begin(), classes.end(),
                                 [](const AgentClass& c) { return c.count == 0; }),
                  classes.end());
    if (fresh > 0) {
      auto it = std::find_if(classes.begin(), classes.end(),
                             [](const AgentClass& c) { return c.bound == 0.0; });
      if (it != classes.end()) {
        it->count += fresh;
      } else {
        classes.insert(classes.begin(), {0.0, fresh});
      }
    }
    if (cfg.subsample_every > 0 && t % cfg.subsample_every == 0 && dead > 0) {
      out.values.push_back(static_cast<double>(dead) /
                           static_cast<double>(cfg.n_agents));
    }
  }
  return out;
}

SampleSet stdmap_run(const StdMapConfig& cfg, RandomStream rs) {
  if (!(cfg.K > 0.0)) throw domain_error("K must be > 0");
  if (cfg.n_initial_conditions == 0 || cfg.sum_length == 0) {
    throw domain_error("orbit count and sum length must be positive");
  }
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  const std::size_t orbits = cfg.n_initial_conditions;
  std::vector<double> sums(orbits);

  parallel_for(orbits, [&](std::size_t j) {
    RandomStream orbit_rs = rs.child(j);
    double x = orbit_rs.uniform() * kTwoPi;
    double y = orbit_rs.uniform() * kTwoPi;
    auto step = [&] {
      y = std::fmod(y - cfg.K * std::sin(x), kTwoPi);
      if (y < 0.0) y += kTwoPi;
      x = std::fmod(x + y, kTwoPi);
      if (x < 0.0) x += kTwoPi;
    };
    for (std::uint64_t i = 0; i < cfg.transient; ++i) step();
    double s = 0.0;
    for (std::uint64_t i = 0; i < cfg.sum_length; ++i) {
      step();
      s += x;
    }
    sums[j] = s;
  });

  double mean_sum = 0.0;
  for (double s : sums) mean_sum += s;
  mean_sum /= orbits;
  const double scale = std::sqrt(static_cast<double>(cfg.sum_length));

  SampleSet out;
  out.generator = "stdmap";
  out.seed = rs.seed();
  out.stream_id = rs.stream_id();
  out.params = "K=" + std::to_string(cfg.K) +
               " orbits=" + std::to_string(cfg.n_initial_conditions) +
               " sum_length=" + std::to_string(cfg.sum_length) +
               " transient=" + std::to_string(cfg.transient);
  out.values.reserve(orbits);
  for (double s : sums) out.values.push_back((s - mean_sum) / scale);
  return out;
}

}  // namespace iatails
