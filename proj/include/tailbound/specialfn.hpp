#pragma once

// Scalar special functions used by the distribution code: the standard
// Gaussian density/CDF/quantile, the log gamma function, and the
// regularized incomplete gamma and beta functions. Everything is plain
// double precision with no global state.

namespace tailbound {

// 2*pi. Gaussian normalization constants are derived from this.
inline constexpr double tau = 6.283185307179586476925286766559;

// Standard normal density phi(z) = exp(-z^2/2) / sqrt(tau).
double gaussian_pdf(double z);

// Standard normal CDF Phi(z). Evaluated through the regularized
// incomplete gamma function, which keeps the relative error of the
// tails small instead of only the absolute error.
double gaussian_cdf(double z);

// Inverse of gaussian_cdf on (0,1). Halley-polished so that
// gaussian_cdf(gaussian_quantile(q)) recovers q to near full precision
// even for q ~ 1e-10.
double gaussian_quantile(double q);

// log Gamma(a) for a > 0.
double log_gamma(double a);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a)
// and its complement Q(a,x), for a > 0, x >= 0.
double reg_inc_gamma_lower(double a, double x);
double reg_inc_gamma_upper(double a, double x);

// log Q(a,x), valid deep in the tail where Q itself underflows.
// Requires x >= a + 1 so the continued fraction representation applies.
double log_reg_inc_gamma_upper(double a, double x);

// Regularized incomplete beta I_x(a,b) for a,b > 0, x in [0,1].
double reg_inc_beta(double a, double b, double x);

}  // namespace tailbound
