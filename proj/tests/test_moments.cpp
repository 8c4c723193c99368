#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "iatails/errors.hpp"
#include "iatails/moments.hpp"
#include "iatails/sampler.hpp"

using namespace iatails;

TEST_CASE("one-sided power moments reduce to the specific closed rows") {
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double kappa : {0.25, 0.5, 1.0, 2.0}) {
      CHECK(gpd_power_moment(1, 2, sigma, kappa) ==
            doctest::Approx(sigma / 2.0).epsilon(1e-10));
      CHECK(gpd_power_moment(2, 3, sigma, kappa) ==
            doctest::Approx(2.0 * sigma * sigma / (3.0 * (3.0 + kappa)))
                .epsilon(1e-10));
      CHECK(gpd_power_moment(3, 4, sigma, kappa) ==
            doctest::Approx(3.0 * sigma * sigma * sigma /
                            (4.0 * (kappa + 4.0) * (kappa + 2.0)))
                .epsilon(1e-10));
    }
  }
  CHECK(gpd_power_moment(0, 1, 1.0, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("third moment of the 4-power density agrees with quadrature") {
  // independent check through the power-density transform
  for (double kappa : {0.25, 1.0}) {
    const double sigma = 0.5;
    const CoupledParams p4 =
        power_density_params(CoupledParams::gpd(sigma, kappa), 4);
    const double direct =
        expected_abs_functional(p4, [](double u) { return u * u * u; });
    CHECK(gpd_power_moment(3, 4, sigma, kappa) ==
          doctest::Approx(direct).epsilon(1e-8));
    const double direct2 =
        expected_abs_functional(
            power_density_params(CoupledParams::gpd(sigma, kappa), 3),
            [](double u) { return u * u; });
    CHECK(gpd_power_moment(2, 3, sigma, kappa) ==
          doctest::Approx(direct2).epsilon(1e-8));
  }
}

TEST_CASE("moment divergence boundary is enforced exactly") {
  // m=1, n=1 (plain mean) diverges at kappa >= 1
  CHECK_NOTHROW(gpd_power_moment(1, 1, 1.0, 1.0 - 1e-9));
  CHECK_THROWS_AS(gpd_power_moment(1, 1, 1.0, 1.0 + 1e-9),
                  moment_divergence_error);
  CHECK_THROWS_AS(gpd_power_moment(1, 1, 1.0, 1.0), moment_divergence_error);
  // m=2, n=1 (plain second moment) diverges at kappa >= 0.5
  CHECK_NOTHROW(gpd_power_moment(2, 1, 1.0, 0.5 - 1e-9));
  CHECK_THROWS_AS(gpd_power_moment(2, 1, 1.0, 0.5 + 1e-9),
                  moment_divergence_error);
  // m <= n-1 is finite for every kappa (the point of the power density)
  CHECK_NOTHROW(gpd_power_moment(2, 3, 1.0, 50.0));
  CHECK_NOTHROW(gpd_power_moment(1, 2, 1.0, 50.0));
  // symmetric family: m=4, n=3 diverges at kappa >= 1.5
  CHECK_THROWS_AS(gauss_power_moment(4, 3, 1.0, 1.5 + 1e-9),
                  moment_divergence_error);
  CHECK_NOTHROW(gauss_power_moment(4, 3, 1.0, 1.5 - 1e-9));
}

TEST_CASE("symmetric-family power moments") {
  for (double kappa : {0.25, 1.0, 2.0}) {
    CHECK(gauss_power_moment(2, 3, 0.5, kappa) ==
          doctest::Approx(0.25 / 3.0).epsilon(1e-12));
    CHECK(gauss_power_moment(4, 5, 0.5, kappa) ==
          doctest::Approx(3.0 * 0.0625 / (25.0 + 10.0 * kappa))
              .epsilon(1e-12));
  }
  CHECK(gauss_power_moment(3, 4, 1.0, 1.0) == 0.0);
  CHECK(gauss_power_moment(4, 5, 0.5, 1.0) ==
        doctest::Approx(3.0 * 0.0625 / 35.0).epsilon(1e-12));
}

TEST_CASE("inversions undo the forward formulas") {
  {
    const GpdInversion inv = invert_gpd(0.25, 1.0 / 24.0);
    CHECK(inv.sigma_hat == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(inv.kappa_hat == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const GpdInversion inv = invert_gpd(0.25, 2.0 * 0.25 / 9.0);
    CHECK(inv.sigma_hat == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::fabs(inv.kappa_hat) < 1e-12);
  }
  for (double sigma : {0.5, 1.0}) {
    for (double kappa : {0.25, 2.0}) {
      const GpdInversion inv = invert_gpd(
          gpd_power_moment(1, 2, sigma, kappa),
          gpd_power_moment(2, 3, sigma, kappa));
      CHECK(inv.sigma_hat == doctest::Approx(sigma).epsilon(1e-12));
      CHECK(inv.kappa_hat == doctest::Approx(kappa).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(invert_gpd(0.1, 100.0), inversion_error);
  CHECK(invert_gauss_sigma(1.0 / 12.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(invert_gauss_sigma(1.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(invert_gauss_sigma(3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(invert_gauss_sigma(-1.0), domain_error);
  for (double sigma : {0.5, 1.0}) {
    const double s4 = sigma * sigma * sigma * sigma;
    CHECK(invert_gauss_kappa_quint(3.0 * s4 / 35.0, sigma) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(invert_gauss_kappa_quint(3.0 * s4 / 25.0, sigma)) <
          1e-12);
  }
  CHECK(invert_gauss_kappa_quint(gauss_power_moment(4, 5, 0.5, 2.0), 0.5) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log-average: exponential limit and scale shift") {
  const double euler_mascheroni = 0.5772156649015329;
  CHECK(theoretical_log_abs_mean(CoupledParams::gpd(1.0, 1e-8)) ==
        doctest::Approx(-euler_mascheroni).epsilon(1e-4));
  for (double kappa : {0.25, 1.0}) {
    const double base = theoretical_log_abs_mean(CoupledParams::gpd(1.0, kappa));
    CHECK(theoretical_log_abs_mean(CoupledParams::gpd(2.0, kappa)) ==
          doctest::Approx(base + std::log(2.0)).epsilon(1e-9));
    // independent of sigma after removing ln sigma
    const double b2 =
        theoretical_log_abs_mean(CoupledParams::gpd(0.5, kappa)) -
        std::log(0.5);
    CHECK(b2 == doctest::Approx(base).epsilon(1e-9));
  }
  // symmetric family: Monte Carlo oracle
  const CoupledParams p = CoupledParams::gauss(0.5, 1.0);
  const SampleSet s = sample_coupled(1000000, p, RandomStream(77, 0));
  double m = 0.0, m2 = 0.0;
  std::size_t used = 0;
  for (double x : s.values) {
    const double a = std::fabs(x);
    if (a == 0.0) continue;
    const double lx = std::log(a);
    m += lx;
    m2 += lx * lx;
    ++used;
  }
  m /= used;
  const double se = std::sqrt((m2 / used - m * m) / used);
  CHECK(std::fabs(theoretical_log_abs_mean(p) - m) < 4.0 * se);
}

TEST_CASE("coupling recovery from the log-average") {
  for (int alpha : {1, 2}) {
    const CoupledParams p = alpha == 1 ? CoupledParams::gpd(0.5, 1.0)
                                       : CoupledParams::gauss(0.5, 1.0);
    const double lm = theoretical_log_abs_mean(p);
    CHECK(solve_kappa_from_log_mean(lm, 0.5, alpha) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  // near-zero coupling
  const double lm0 = theoretical_log_abs_mean(CoupledParams::gpd(1.0, 1e-6));
  CHECK(solve_kappa_from_log_mean(lm0, 1.0, 1) < 1e-4);
  // log mean below the attainable range -> explicit no-solution error
  CHECK_THROWS_AS(solve_kappa_from_log_mean(-10.0, 1.0, 1), no_solution_error);
}
