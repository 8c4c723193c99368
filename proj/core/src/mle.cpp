#include "iatails/mle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "iatails/errors.hpp"

namespace iatails {

namespace {

constexpr double kKappaFloor = 1e-6;

CoupledParams make_params(int alpha, double sigma, double kappa) {
  return alpha == 1 ? CoupledParams::gpd(sigma, kappa)
                    : CoupledParams::gauss(sigma, kappa);
}

struct NmResult {
  std::array<double, 2> x;
  double f = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Nelder-Mead in 2D with the standard reflect/expand/contract/shrink
// moves; stops when the simplex diameter drops below `tol`.
template <typename F>
NmResult nelder_mead(F&& f, std::array<double, 2> start, double tol,
                     std::size_t max_iter) {
  struct Vertex {
    std::array<double, 2> x;
    double f;
  };
  std::array<Vertex, 3> s;
  s[0] = {start, f(start)};
  for (int d = 0; d < 2; ++d) {
    std::array<double, 2> x = start;
    x[d] += 0.25;
    s[d + 1] = {x, f(x)};
  }
  NmResult out;
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    std::sort(s.begin(), s.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double diam = 0.0;
    for (int i = 1; i < 3; ++i) {
      for (int d = 0; d < 2; ++d) {
        diam = std::max(diam, std::fabs(s[i].x[d] - s[0].x[d]));
      }
    }
    if (diam < tol) {
      out.converged = true;
      break;
    }
    const std::array<double, 2> centroid = {0.5 * (s[0].x[0] + s[1].x[0]),
                                            0.5 * (s[0].x[1] + s[1].x[1])};
    auto point = [&](double coef) {
      return std::array<double, 2>{centroid[0] + coef * (centroid[0] - s[2].x[0]),
                                   centroid[1] + coef * (centroid[1] - s[2].x[1])};
    };
    const auto xr = point(1.0);
    const double fr = f(xr);
    if (fr < s[0].f) {
      const auto xe = point(2.0);
      const double fe = f(xe);
      s[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < s[1].f) {
      s[2] = {xr, fr};
    } else {
      const auto xc = point(fr < s[2].f ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, s[2].f)) {
        s[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          for (int d = 0; d < 2; ++d) {
            s[i].x[d] = 0.5 * (s[i].x[d] + s[0].x[d]);
          }
          s[i].f = f(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  out.x = s[0].x;
  out.f = s[0].f;
  return out;
}

double median_abs(std::vector<double> v) {
  for (double& x : v) x = std::fabs(x);
  const std::size_t h = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + h, v.end());
  return v[h];
}

}  // namespace

double nll(const CoupledParams& params, const std::vector<double>& samples) {
  params.validate();
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (params.support == Support::one_sided && samples[i] < params.mu) {
      throw domain_error("sample " + std::to_string(i) +
                         " below the one-sided support");
    }
    total -= log_pdf(samples[i], params);
  }
  return total;
}

EstimateResult ml_fit(const std::vector<double>& samples, int alpha) {
  if (alpha != 1 && alpha != 2) throw domain_error("alpha must be 1 or 2");
  if (samples.size() < 10) {
    throw insufficient_data_error("ml_fit needs at least 10 samples");
  }
  double mad = median_abs(samples);
  if (!(mad > 0.0)) mad = 1.0;

  auto objective = [&](const std::array<double, 2>& x) {
    const double sigma = std::exp(x[0]);
    const double kappa = std::max(kKappaFloor, std::exp(x[1]));
    if (!std::isfinite(sigma) || sigma <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    return nll(make_params(alpha, sigma, kappa), samples);
  };

  EstimateResult out;
  out.method_tag = "ML";
  double best_f = std::numeric_limits<double>::infinity();
  for (double s0 : {0.5, 1.0, 2.0}) {
    for (double k0 : {0.1, 1.0}) {
      const std::array<double, 2> start = {std::log(s0 * mad), std::log(k0)};
      const NmResult r = nelder_mead(objective, start, 1e-8, 600);
      out.iterations += r.iterations;
      ++out.restarts_used;
      if (std::isfinite(r.f) && r.f < best_f) {
        best_f = r.f;
        out.sigma_hat = std::exp(r.x[0]);
        out.kappa_hat = std::max(kKappaFloor, std::exp(r.x[1]));
        out.converged = r.converged;
      }
    }
  }
  if (!std::isfinite(best_f)) {
    throw numeric_error("all ML restarts diverged");
  }
  out.nll_at_optimum = best_f;
  return out;
}

}  // namespace iatails
