#pragma once

// Certified bound constructors: each operation assembles the two (or
// three) sides of one of the library's provable inequalities so that
// callers and checkers can measure the slack directly.

#include "tailbound/families.hpp"

namespace tailbound {
namespace bounds {

// Pr(X < point) <= gaussian_value <= Pr(X <= point), the two-sided
// intersection property of the discrete families vs the Gaussian.
struct TailBracket {
  double lower = 0.0;
  double gaussian_value = 0.0;
  double upper = 0.0;
  Family family;
  double point = 0.0;
};

// Pr(X <= x_m) <= Pr(M <= m) <= Pr(X <= x_m_plus_1) where X is the
// Gamma companion of a negative binomial M and the x's match G values.
struct GammaBracket {
  double x_m = 0.0;
  double x_m_plus_1 = 0.0;
  double cdf_lower = 0.0;
  double cdf_upper = 0.0;
};

// The ordered triple G_Geo(m - 1/2) <= G_Exp(x) <= G_Geo(m) at the
// CDF-matched point x = theta * m * ln((theta+1)/theta).
struct GeometricSandwich {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  double x = 0.0;
};

enum class DominationOrder { Dominates, Dominated, Equal };

// Phi(G(x)) for the continuous families, where it is a guaranteed
// lower bound on the CDF. Throws for discrete families, whose Gaussian
// value is a two-sided intersection rather than a one-sided bound.
double gaussian_lower_bound(const Family& f, double x);

// The Gaussian intersection bracket for Binomial and Poisson at an
// integer point m of the support.
TailBracket intersection_bracket(const Family& f, double m);

// Gamma-CDF bracket around the negative binomial CDF at m >= 0.
GammaBracket negbin_gamma_bracket(double k, double theta, long m);

// Geometric/exponential sandwich at m >= 1.
GeometricSandwich geometric_sandwich(double theta, long m);

// Whether the signed log-likelihood of the first family is dominated
// by (concentrated closer to the Gaussian than) the second.
DominationOrder domination_order_ig(double mu1, double lambda1, double mu2,
                                    double lambda2);
DominationOrder domination_order_gamma(double k1, double k2);

// Phi(G_neg(m)): a valid lower bound on the neg-bin CDF. The matching
// upper bound is false in general; see the counterexample checker.
double negbin_gaussian_lower(double k, double theta, long m);

// Slack Pr(L <= m) - Phi(G_Po(m + 1/2)) of the conjectured half-step
// inequality. Positive slack means the conjecture held at this point.
double poisson_halfstep_probe(double lambda, long m);

// Solves G_Po(lambda)(k) = G_bin(n,p)(k) for lambda. The matched pair
// then satisfies Pr(K < k) <= Pr(L < k) <= Pr(K <= k).
double matched_poisson_lambda(int n, double p, int k);

}  // namespace bounds
}  // namespace tailbound
