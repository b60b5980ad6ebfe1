#pragma once

// Independent reference implementations used to validate the closed
// forms elsewhere in the library: exact CDFs and densities computed by
// summation or textbook formulas, adaptive quadrature for divergences,
// and finite-difference probes for the derivative identities. Nothing
// here reuses the closed-form divergence or signed-log-likelihood code
// paths it is meant to check.

#include <functional>
#include <string>
#include <vector>

#include "tailbound/families.hpp"

namespace tailbound {
namespace oracles {

enum class GridSpacing { Linear, Log, Explicit };

// A one-dimensional evaluation grid, inclusive of both endpoints.
// Irregular parameter sets (e.g. shape values {0.5,1,2,5,20}) are
// carried verbatim with Explicit spacing; lo/hi/count are derived.
struct GridSpec {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  GridSpacing spacing = GridSpacing::Linear;
  std::vector<double> explicit_points;

  static GridSpec linear(std::string name, double lo, double hi, int count);
  static GridSpec logarithmic(std::string name, double lo, double hi, int count);
  static GridSpec explicit_set(std::string name, std::vector<double> pts);

  std::vector<double> points() const;
};

// Exact CDF Pr(X <= x). Discrete families expect integer x (within
// 1e-9 of an integer; values below the support give 0, and x >= n
// gives 1 for the binomial). Continuous families accept any real x,
// with x <= 0 giving 0.
double exact_cdf(const Family& f, double x);

// Exact textbook density (continuous families, x > 0).
double exact_pdf(const Family& f, double x);

// Exact probability mass Pr(X = m) (discrete families, integer m).
double pmf(const Family& f, double m);

// Adaptive Simpson quadrature of fn over [a, b] with a <= b, to
// absolute tolerance tol.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double tol);

// D(P^mu1 || P^mu2) by numerically integrating (mu - mu1)/V(mu) from
// mu1 to mu2, independent of the closed forms. Intervals touching the
// boundary of the mean domain are rejected.
double numeric_divergence(const Family& f, double mu1, double mu2);

// Density of G(X) at z by central finite differences of the exact CDF
// through the inverse map: [F(G^-1(z+h)) - F(G^-1(z-h))] / (2h).
// Continuous families only; h must lie in [1e-7, 1e-3].
double numeric_signed_ll_density(const Family& f, double z, double h);

// Residual of the derivative identities tying the parameter derivative
// of a tail probability to the shape-incremented family:
//   Poisson(lambda):          d/dlambda Pr(K <= m) = -Pr(K = m)
//   Gamma(k, theta), mean mu: d/dmu Pr(X <= t) = -pdf of Gamma(k+1, theta) at t
//   NegBin(k, theta), mean mu: d/dmu Pr(M <= m) = -pmf of neg(k+1, theta) at m
// The derivative is taken by central differences with step h and the
// absolute residual |FD + exact right-hand side| is returned.
double derivative_lemma_residual(const Family& f, double point, double h);

}  // namespace oracles
}  // namespace tailbound
