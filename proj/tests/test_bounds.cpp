#include "tailbound/bounds.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tailbound/families.hpp"
#include "tailbound/oracles.hpp"
#include "tailbound/specialfn.hpp"

// Reference values computed with 50-digit arithmetic and rounded to
// the nearest double.

namespace {

using namespace tailbound;
using namespace tailbound::bounds;

bool close_rel(double got, double want, double rel) {
  if (got == want) return true;
  return std::fabs(got - want) <= rel * std::fmax(std::fabs(got), std::fabs(want));
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("gaussian lower bound matches reference values") {
  CHECK(close_rel(gaussian_lower_bound(Exponential(1), 2.0),
                  0.78330201328691926199, 1e-14));
  CHECK(gaussian_lower_bound(InverseGaussian(1, 1), 1.0) == 0.5);
  CHECK_THROWS_AS((void)gaussian_lower_bound(Poisson(1), 1.0),
                  std::invalid_argument);
}

TEST_CASE("gaussian lower bound never exceeds the exact cdf") {
  const Family families[] = {InverseGaussian(1, 0.25), InverseGaussian(1, 4),
                             Exponential(3.5), Gamma(0.5, 1), Gamma(20, 0.3)};
  for (const Family& f : families) {
    double mu = mean(f);
    for (int i = 1; i <= 60; i++) {
      double x = mu * 0.1 * i;
      CHECK(gaussian_lower_bound(f, x) <=
            oracles::exact_cdf(f, x) + 1e-12);
    }
  }
}

TEST_CASE("binomial intersection bracket matches reference values") {
  TailBracket b = intersection_bracket(Binomial(7, 0.5), 5.0);
  CHECK(close_rel(b.lower, 99.0 / 128.0, 1e-14));
  CHECK(close_rel(b.gaussian_value, 0.87544484103864414831, 1e-14));
  CHECK(close_rel(b.upper, 120.0 / 128.0, 1e-14));
  CHECK(b.point == 5.0);
}

TEST_CASE("poisson intersection bracket matches reference values") {
  TailBracket b = intersection_bracket(Poisson(3.5), 5.0);
  CHECK(close_rel(b.lower, 0.72544495330960460762, 1e-14));
  CHECK(close_rel(b.gaussian_value, 0.77422324924193819838, 1e-14));
  CHECK(close_rel(b.upper, 0.85761355309577831645, 1e-14));
}

TEST_CASE("intersection brackets are ordered over the support") {
  for (int m = 0; m <= 7; m++) {
    TailBracket b = intersection_bracket(Binomial(7, 0.3), (double)m);
    CHECK(b.lower <= b.gaussian_value + 1e-12);
    CHECK(b.gaussian_value <= b.upper + 1e-12);
  }
  for (int m = 0; m <= 25; m++) {
    TailBracket b = intersection_bracket(Poisson(3.5), (double)m);
    CHECK(b.lower <= b.gaussian_value + 1e-12);
    CHECK(b.gaussian_value <= b.upper + 1e-12);
  }
}

TEST_CASE("intersection bracket rejects bad arguments") {
  CHECK_THROWS_AS((void)intersection_bracket(Gamma(2, 1), 3.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)intersection_bracket(Poisson(3.5), 2.5), std::domain_error);
  CHECK_THROWS_AS((void)intersection_bracket(Poisson(3.5), -1.0), std::domain_error);
}

TEST_CASE("negative binomial gamma bracket matches reference values") {
  GammaBracket b = negbin_gamma_bracket(2.0, 1.75, 3);
  CHECK(close_rel(b.x_m, 3.1006981515131131539, 1e-12));
  CHECK(close_rel(b.x_m_plus_1, 3.8985139251362035849, 1e-12));
  CHECK(close_rel(b.cdf_lower, 0.52872837832332213301, 1e-12));
  CHECK(close_rel(b.cdf_upper, 0.65213664779828807209, 1e-12));
}

TEST_CASE("gamma bracket contains the negative binomial cdf") {
  for (double k : {0.5, 1.0, 2.0, 5.0}) {
    for (double theta : {0.25, 1.0, 3.5}) {
      for (long m = 0; m <= 30; m++) {
        GammaBracket b = negbin_gamma_bracket(k, theta, m);
        double exact = oracles::exact_cdf(NegativeBinomial(k, theta), (double)m);
        CHECK(b.cdf_lower <= exact + 1e-12);
        CHECK(exact <= b.cdf_upper + 1e-12);
        CHECK(b.x_m < b.x_m_plus_1);
      }
    }
  }
  CHECK_THROWS_AS((void)negbin_gamma_bracket(2.0, 1.75, -1), std::domain_error);
}

TEST_CASE("geometric sandwich matches reference values") {
  GeometricSandwich s = geometric_sandwich(3.5, 4);
  CHECK(close_rel(s.x, 3.5184019959326850876, 1e-14));
  CHECK(s.lower == 0.0);
  CHECK(close_rel(s.middle, 0.0052485267658814795769, 1e-12));
  CHECK(close_rel(s.upper, 0.12102059501555085684, 1e-13));

  GeometricSandwich t = geometric_sandwich(1.0, 1);
  CHECK(close_rel(t.lower, -0.41218810850799355988, 1e-13));
  CHECK(close_rel(t.middle, -0.34542756445196910901, 1e-13));
  CHECK(t.upper == 0.0);
}

TEST_CASE("geometric sandwich is ordered") {
  for (double theta : {0.5, 3.5, 20.0}) {
    for (long m = 1; m <= 50; m++) {
      GeometricSandwich s = geometric_sandwich(theta, m);
      CHECK(s.lower <= s.middle + 1e-12);
      CHECK(s.middle <= s.upper + 1e-12);
    }
  }
  CHECK_THROWS_AS((void)geometric_sandwich(3.5, 0), std::domain_error);
}

TEST_CASE("domination orders") {
  CHECK(domination_order_ig(1, 1, 1, 4) == DominationOrder::Dominated);
  CHECK(domination_order_ig(1, 4, 1, 1) == DominationOrder::Dominates);
  CHECK(domination_order_ig(2, 4, 1, 2) == DominationOrder::Equal);
  CHECK(domination_order_gamma(5, 20) == DominationOrder::Dominated);
  CHECK(domination_order_gamma(20, 5) == DominationOrder::Dominates);
  CHECK(domination_order_gamma(5, 5) == DominationOrder::Equal);
  CHECK_THROWS_AS((void)domination_order_ig(0, 1, 1, 1), std::domain_error);
  CHECK_THROWS_AS((void)domination_order_gamma(-1, 2), std::domain_error);
}

TEST_CASE("negative binomial gaussian value is a valid lower bound") {
  for (double k : {1.0, 2.0, 5.0}) {
    for (double theta : {0.25, 1.0, 3.5}) {
      for (long m = 0; m <= 30; m++) {
        CHECK(negbin_gaussian_lower(k, theta, m) <=
              oracles::exact_cdf(NegativeBinomial(k, theta), (double)m) + 1e-12);
      }
    }
  }
}

TEST_CASE("poisson half-step probe matches reference values") {
  CHECK(close_rel(poisson_halfstep_probe(3.5, 4), 0.029877852421833202137, 1e-12));
  CHECK(close_rel(poisson_halfstep_probe(0.1, 0), 0.088980660154929443525, 1e-12));
}

TEST_CASE("matched poisson mean reproduces the reference value") {
  double lambda = matched_poisson_lambda(7, 0.5, 5);
  CHECK(close_rel(lambda, 2.8453051070504694128, 1e-10));
  // The match equates the signed log-likelihoods at the point.
  CHECK(std::fabs(signed_ll(Poisson(lambda), 5.0) -
                  signed_ll(Binomial(7, 0.5), 5.0)) <= 1e-12);
  // Pr(L < 5) then separates the binomial strict and weak tails.
  double inner = oracles::exact_cdf(Poisson(lambda), 4.0);
  CHECK(close_rel(inner, 0.84055259683631420091, 1e-10));
  CHECK(oracles::exact_cdf(Binomial(7, 0.5), 4.0) <= inner);
  CHECK(inner <= oracles::exact_cdf(Binomial(7, 0.5), 5.0));
}

TEST_CASE("matched poisson mean can exceed n when k is zero") {
  // For k = 0 the match is lambda = -n ln(1-p), which passes n once
  // p > 1 - 1/e.
  double lambda = matched_poisson_lambda(10, 0.7, 0);
  CHECK(close_rel(lambda, -10.0 * std::log1p(-0.7), 1e-10));
  CHECK(lambda > 10.0);
  CHECK_THROWS_AS((void)matched_poisson_lambda(10, 0.7, 11), std::domain_error);
}

}  // TEST_SUITE
