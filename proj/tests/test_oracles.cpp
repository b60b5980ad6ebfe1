#include "tailbound/oracles.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tailbound/families.hpp"
#include "tailbound/specialfn.hpp"

// Reference values computed with 50-digit arithmetic and rounded to
// the nearest double.

namespace {

using namespace tailbound;
using oracles::GridSpec;

bool close_rel(double got, double want, double rel) {
  if (got == want) return true;
  return std::fabs(got - want) <= rel * std::fmax(std::fabs(got), std::fabs(want));
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("grid specs enumerate their points") {
  GridSpec lin = GridSpec::linear("z", -1.0, 1.0, 5);
  std::vector<double> pts = lin.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == -1.0);
  CHECK(pts[2] == doctest::Approx(0.0).scale(1.0));
  CHECK(pts.back() == 1.0);

  GridSpec lg = GridSpec::logarithmic("lambda", 0.1, 100.0, 4);
  pts = lg.points();
  REQUIRE(pts.size() == 4);
  CHECK(pts.front() == doctest::Approx(0.1));
  CHECK(pts[1] == doctest::Approx(1.0));
  CHECK(pts[2] == doctest::Approx(10.0));
  CHECK(pts.back() == doctest::Approx(100.0));

  GridSpec ex = GridSpec::explicit_set("k", {0.5, 1.0, 2.0, 5.0, 20.0});
  CHECK(ex.points() == std::vector<double>{0.5, 1.0, 2.0, 5.0, 20.0});
  CHECK(ex.lo == 0.5);
  CHECK(ex.hi == 20.0);
  CHECK(ex.count == 5);

  CHECK_THROWS_AS((void)GridSpec::linear("z", 0, 1, 1).points(), std::domain_error);
  CHECK_THROWS_AS((void)GridSpec::logarithmic("z", 0.0, 1, 5).points(),
                  std::domain_error);
}

TEST_CASE("inverse Gaussian cdf matches reference values") {
  CHECK(close_rel(oracles::exact_cdf(InverseGaussian(1, 1), 1.0),
                  0.66810200122317060643, 1e-14));
  CHECK(close_rel(oracles::exact_cdf(InverseGaussian(1, 4), 1.3),
                  0.78220602399932990636, 1e-14));
  CHECK(close_rel(oracles::exact_cdf(InverseGaussian(2, 0.5), 1.0),
                  0.59994873027455646511, 1e-14));
  CHECK(close_rel(oracles::exact_cdf(InverseGaussian(3.5, 2), 6.0),
                  0.84355916030622302288, 1e-14));
  CHECK(oracles::exact_cdf(InverseGaussian(1, 1), 0.0) == 0.0);
  CHECK(oracles::exact_cdf(InverseGaussian(1, 1), 1e9) <= 1.0);
}

TEST_CASE("inverse Gaussian cdf agrees with quadrature of its density") {
  for (double x : {0.4, 1.0, 2.7}) {
    double q = oracles::integrate(
        [&](double t) { return oracles::exact_pdf(InverseGaussian(1, 1), t); },
        1e-6, x, 1e-13);
    CHECK(std::fabs(q - oracles::exact_cdf(InverseGaussian(1, 1), x)) <= 1e-9);
  }
  // Large 2 lambda / mu exercises the log-space second term.
  double q = oracles::integrate(
      [&](double t) { return oracles::exact_pdf(InverseGaussian(1, 400), t); },
      1e-3, 0.9, 1e-13);
  CHECK(std::fabs(q - oracles::exact_cdf(InverseGaussian(1, 400), 0.9)) <= 1e-9);
}

TEST_CASE("exponential and gamma cdf paths agree") {
  for (double x : {0.1, 1.0, 4.2})
    CHECK(close_rel(oracles::exact_cdf(Exponential(2), x),
                    oracles::exact_cdf(Gamma(1, 2), x), 1e-14));
}

TEST_CASE("discrete cdfs match reference values") {
  CHECK(close_rel(oracles::exact_cdf(Poisson(3.5), 4.0), 0.72544495330960460762,
                  1e-14));
  CHECK(close_rel(oracles::exact_cdf(Poisson(3.5), 5.0), 0.85761355309577831645,
                  1e-14));
  CHECK(close_rel(oracles::exact_cdf(Geometric(3.5), 3.0), 0.63404968754762993446,
                  1e-14));
  CHECK(close_rel(oracles::exact_cdf(NegativeBinomial(2, 1.75), 3.0),
                  0.59747533390044147506, 1e-14));
  CHECK(close_rel(oracles::exact_cdf(Binomial(7, 0.5), 4.0), 99.0 / 128.0, 1e-14));
  CHECK(close_rel(oracles::exact_cdf(Binomial(7, 0.5), 5.0), 120.0 / 128.0, 1e-14));
}

TEST_CASE("discrete cdf edges") {
  CHECK(oracles::exact_cdf(Poisson(3.5), -1.0) == 0.0);
  CHECK(oracles::exact_cdf(Geometric(2), -1.0) == 0.0);
  CHECK(oracles::exact_cdf(Binomial(7, 0.5), 7.0) == 1.0);
  CHECK(oracles::exact_cdf(Binomial(7, 0.5), 9.0) == 1.0);
  // Far past the mode the summed mass reaches 1 only up to rounding;
  // the clamp keeps it from exceeding 1.
  CHECK(oracles::exact_cdf(Poisson(3.5), 400.0) <= 1.0);
  CHECK(oracles::exact_cdf(Poisson(3.5), 400.0) >= 1.0 - 1e-12);
  CHECK_THROWS_AS((void)oracles::exact_cdf(Poisson(3.5), 2.5), std::domain_error);
  CHECK_THROWS_AS((void)oracles::exact_cdf(Poisson(3.5), std::nan("")),
                  std::domain_error);
}

TEST_CASE("binomial cdf agrees with the incomplete beta identity") {
  // Pr(Bin(n,p) <= k) = I_{1-p}(n-k, k+1), an independent evaluation
  // path through the continued fraction.
  struct Probe {
    int n;
    double p;
    int k;
  };
  const Probe probes[] = {
      {7, 0.5, 2},   {7, 0.5, 5},    {23, 0.1, 4},   {23, 0.77, 15},
      {60, 0.33, 24}, {200, 0.5, 90}, {200, 0.9, 170},
  };
  for (const Probe& pr : probes) {
    double lhs = oracles::exact_cdf(Binomial(pr.n, pr.p), (double)pr.k);
    double rhs = reg_inc_beta((double)(pr.n - pr.k), (double)pr.k + 1.0, 1.0 - pr.p);
    CHECK(close_rel(lhs, rhs, 1e-12));
  }
}

TEST_CASE("geometric closed form agrees with shape-one summation") {
  for (double theta : {0.5, 3.5, 10.0})
    for (double m : {0.0, 3.0, 17.0})
      CHECK(close_rel(oracles::exact_cdf(Geometric(theta), m),
                      oracles::exact_cdf(NegativeBinomial(1, theta), m), 1e-13));
}

TEST_CASE("pmf values and recurrences") {
  CHECK(close_rel(oracles::pmf(Poisson(3.5), 4.0), 0.18881228540881958405, 1e-14));
  CHECK(close_rel(oracles::pmf(NegativeBinomial(3, 1.75), 3.0),
                  0.12391331712540522172, 1e-14));
  CHECK(close_rel(oracles::pmf(Binomial(7, 0.5), 5.0), 21.0 / 128.0, 1e-14));
  CHECK(oracles::pmf(Binomial(7, 0.5), 9.0) == 0.0);
  CHECK(oracles::pmf(Poisson(3.5), -1.0) == 0.0);
  CHECK_THROWS_AS((void)oracles::pmf(Exponential(1), 1.0), std::invalid_argument);

  for (long m : {0L, 2L, 9L}) {
    double lam = 3.5;
    CHECK(close_rel(oracles::pmf(Poisson(lam), (double)(m + 1)) /
                        oracles::pmf(Poisson(lam), (double)m),
                    lam / (m + 1), 1e-13));
    double k = 2.0, theta = 1.75;
    CHECK(close_rel(oracles::pmf(NegativeBinomial(k, theta), (double)(m + 1)) /
                        oracles::pmf(NegativeBinomial(k, theta), (double)m),
                    (k + m) / (m + 1) * theta / (1.0 + theta), 1e-13));
    int n = 12;
    double p = 0.3;
    CHECK(close_rel(oracles::pmf(Binomial(n, p), (double)(m + 1)) /
                        oracles::pmf(Binomial(n, p), (double)m),
                    (double)(n - m) / (m + 1) * p / (1.0 - p), 1e-13));
  }
}

TEST_CASE("textbook densities match reference values") {
  CHECK(close_rel(oracles::exact_pdf(Gamma(3, 1), 3.0), 0.22404180765538774341,
                  1e-14));
  CHECK(close_rel(oracles::exact_pdf(Gamma(20, 3), 6.0), 1.9443080660897586072e-13,
                  1e-13));
  CHECK(close_rel(oracles::exact_pdf(InverseGaussian(1, 1), 20.0),
                  5.3685545846655611023e-7, 1e-13));
  CHECK(close_rel(oracles::exact_pdf(Exponential(2), 1.0),
                  0.5 * std::exp(-0.5), 1e-14));
  CHECK_THROWS_AS((void)oracles::exact_pdf(Poisson(1), 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)oracles::exact_pdf(Exponential(1), 0.0), std::domain_error);
}

TEST_CASE("adaptive quadrature integrates smooth functions") {
  double third = oracles::integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(std::fabs(third - 1.0 / 3.0) <= 1e-12);
  double two = oracles::integrate([](double x) { return std::sin(x); }, 0.0, M_PI,
                                  1e-12);
  CHECK(std::fabs(two - 2.0) <= 1e-11);
  double one = oracles::integrate([](double z) { return gaussian_pdf(z); }, -8.0,
                                  8.0, 1e-12);
  CHECK(std::fabs(one - 1.0) <= 1e-11);
  CHECK(oracles::integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
  CHECK_THROWS_AS((void)oracles::integrate([](double) { return 1.0; }, 1.0, 0.0,
                                           1e-12),
                  std::domain_error);
}

TEST_CASE("numeric divergence agrees with the closed forms") {
  CHECK(std::fabs(oracles::numeric_divergence(Exponential(1), 1.0, 2.0) -
                  0.19314718055994530942) <= 1e-9);
  CHECK(std::fabs(oracles::numeric_divergence(Poisson(1), 5.0, 3.5) -
                  0.28337471969366189456) <= 1e-9);
  CHECK(std::fabs(oracles::numeric_divergence(Geometric(1), 3.5, 5.0) -
                  0.046207022247450847282) <= 1e-9);
  CHECK(std::fabs(oracles::numeric_divergence(InverseGaussian(1, 1), 4.0, 1.0) -
                  1.125) <= 1e-9);
  CHECK(oracles::numeric_divergence(Gamma(2, 1), 4.0, 4.0) == 0.0);
  for (const Family& f : {Family(NegativeBinomial(2, 1.75)), Family(Binomial(9, 0.4)),
                          Family(Gamma(5, 0.7))})
    for (double mu1 : {1.5, 3.0})
      CHECK(std::fabs(oracles::numeric_divergence(f, mu1, 2.25) -
                      divergence(f, mu1, 2.25)) <= 1e-9);
}

TEST_CASE("numeric divergence rejects boundary intervals") {
  CHECK_THROWS_AS((void)oracles::numeric_divergence(Geometric(1), 0.0, 2.0),
                  std::domain_error);
  CHECK_THROWS_AS((void)oracles::numeric_divergence(Binomial(7, 0.5), 3.0, 7.0),
                  std::domain_error);
}

TEST_CASE("finite differences confirm the signed log-likelihood density") {
  const Family families[] = {InverseGaussian(1, 1), InverseGaussian(2, 0.5),
                             Exponential(1), Gamma(5, 1), Gamma(0.5, 2)};
  for (const Family& f : families) {
    for (double z : {-2.0, -0.5, 0.8, 2.5}) {
      double fd = oracles::numeric_signed_ll_density(f, z, 1e-5);
      CHECK(close_rel(signed_ll_density(f, z), fd, 1e-6));
    }
  }
  CHECK_THROWS_AS((void)oracles::numeric_signed_ll_density(Exponential(1), 0.5, 1e-2),
                  std::domain_error);
  CHECK_THROWS_AS((void)oracles::numeric_signed_ll_density(Poisson(1), 0.5, 1e-5),
                  std::invalid_argument);
}

TEST_CASE("signed log-likelihood densities integrate to one") {
  for (const Family& f : {Family(Exponential(1)), Family(Gamma(5, 1)),
                          Family(InverseGaussian(1, 1)),
                          Family(InverseGaussian(1, 0.25))}) {
    double mass = oracles::integrate(
        [&](double z) { return signed_ll_density(f, z); }, -8.0, 8.0, 1e-10);
    CHECK(std::fabs(mass - 1.0) <= 1e-8);
  }
}

TEST_CASE("derivative identities hold to second order") {
  const double h = 1e-4;
  double r_po = oracles::derivative_lemma_residual(Poisson(3.5), 4.0, h);
  double r_ga = oracles::derivative_lemma_residual(Gamma(2, 1), 3.0, h);
  double r_nb = oracles::derivative_lemma_residual(NegativeBinomial(2, 1.75), 3.0, h);
  CHECK(r_po <= 1e-7);
  CHECK(r_ga <= 1e-7);
  CHECK(r_nb <= 1e-7);
  // Central differences: halving h divides the residual by about 4.
  CHECK(oracles::derivative_lemma_residual(Poisson(3.5), 4.0, 2 * h) / r_po >= 3.8);
  CHECK(oracles::derivative_lemma_residual(Gamma(2, 1), 3.0, 2 * h) / r_ga >= 3.8);
  CHECK(oracles::derivative_lemma_residual(NegativeBinomial(2, 1.75), 3.0, 2 * h) /
            r_nb >=
        3.8);
  CHECK_THROWS_AS((void)oracles::derivative_lemma_residual(Exponential(1), 1.0, h),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)oracles::derivative_lemma_residual(Poisson(3.5), 4.0, 0.0),
                  std::domain_error);
}

}  // TEST_SUITE
