#pragma once

// The seven exponential families handled by this library, parametrized
// the way they are usually met in practice, plus the quantities the
// bounds are built from: the information divergence D(P^x || P) between
// the member with mean x and the base member, the signed log-likelihood
//
//   G(x) = sign(x - mean) * sqrt(2 D(P^x || P)),
//
// its inverse, and for the continuous families the saddle-point density
// and the density of G itself.

#include <string>
#include <variant>

namespace tailbound {

// Inverse Gaussian with mean mu and shape lambda; variance mu^3/lambda.
struct InverseGaussian {
  double mu, lambda;
  InverseGaussian(double mu, double lambda);
};

// Exponential with mean theta.
struct Exponential {
  double theta;
  explicit Exponential(double theta);
};

// Gamma with shape k and scale theta; mean k*theta.
struct Gamma {
  double k, theta;
  Gamma(double k, double theta);
};

// Geometric counting failures before the first success; mean theta,
// success probability 1/(theta+1), support {0,1,2,...}.
struct Geometric {
  double theta;
  explicit Geometric(double theta);
};

// Negative binomial counting failures before the k-th success. The
// shape k may be any positive real; the mean is k*theta.
struct NegativeBinomial {
  double k, theta;
  NegativeBinomial(double k, double theta);
};

// Binomial with n trials and success probability p.
struct Binomial {
  int n;
  double p;
  Binomial(int n, double p);
};

// Poisson with mean lambda.
struct Poisson {
  double lambda;
  explicit Poisson(double lambda);
};

using Family = std::variant<InverseGaussian, Exponential, Gamma, Geometric,
                            NegativeBinomial, Binomial, Poisson>;

// Short lowercase name, matching the CLI vocabulary: "ig",
// "exponential", "gamma", "geometric", "negbin", "binomial", "poisson".
std::string family_name(const Family& f);

bool is_discrete(const Family& f);

double mean(const Family& f);

// Variance of the family member with mean mu, as a function of mu.
// mu must lie in the interior of the mean domain.
double variance_function(const Family& f, double mu);

// D(P^mu1 || P^mu2) in nats between the members with means mu1, mu2.
// mu1 may sit on the boundary of the mean domain (where the 0*log 0
// convention applies); mu2 must be interior.
double divergence(const Family& f, double mu1, double mu2);

// Signed log-likelihood G(x) at a point x of the support (real x is
// accepted for the discrete families too, within the convex hull of
// the support).
double signed_ll(const Family& f, double x);

// Inverse of signed_ll. Throws std::range_error when z is outside the
// attainable range (possible for families whose support is bounded
// below or above). signed_ll_inverse(f, 0) is exactly the mean.
double signed_ll_inverse(const Family& f, double z);

// Saddle-point approximation to the density at x, for the continuous
// families (inverse Gaussian, exponential, gamma). For these three
// the approximation is exact up to the normalizing constant, and the
// constant used here makes it exactly the true density.
double saddlepoint_density(const Family& f, double x);

// Density of the random variable G(X) at z, for the continuous
// families. Near z = 0 the closed form is 0/0; following the removable
// singularity, |z| < 1e-6 is evaluated as the average of the values at
// +-1e-6.
double signed_ll_density(const Family& f, double z);

}  // namespace tailbound
