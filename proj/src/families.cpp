#include "tailbound/families.hpp"

#include <cmath>
#include <stdexcept>

#include "tailbound/specialfn.hpp"

namespace tailbound {

static void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

static bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

InverseGaussian::InverseGaussian(double mu_, double lambda_) : mu(mu_), lambda(lambda_) {
  require(finite_pos(mu), "mu must be positive");
  require(finite_pos(lambda), "lambda must be positive");
}

Exponential::Exponential(double theta_) : theta(theta_) {
  require(finite_pos(theta), "theta must be positive");
}

Gamma::Gamma(double k_, double theta_) : k(k_), theta(theta_) {
  require(finite_pos(k), "k must be positive");
  require(finite_pos(theta), "theta must be positive");
}

Geometric::Geometric(double theta_) : theta(theta_) {
  require(finite_pos(theta), "theta must be positive");
}

NegativeBinomial::NegativeBinomial(double k_, double theta_) : k(k_), theta(theta_) {
  require(finite_pos(k), "k must be positive");
  require(finite_pos(theta), "theta must be positive");
}

Binomial::Binomial(int n_, double p_) : n(n_), p(p_) {
  require(n >= 1, "n must be a positive integer");
  require(std::isfinite(p) && p > 0.0 && p < 1.0, "p must lie in (0,1)");
}

Poisson::Poisson(double lambda_) : lambda(lambda_) {
  require(finite_pos(lambda), "lambda must be positive");
}

std::string family_name(const Family& f) {
  struct Namer {
    std::string operator()(const InverseGaussian&) const { return "ig"; }
    std::string operator()(const Exponential&) const { return "exponential"; }
    std::string operator()(const Gamma&) const { return "gamma"; }
    std::string operator()(const Geometric&) const { return "geometric"; }
    std::string operator()(const NegativeBinomial&) const { return "negbin"; }
    std::string operator()(const Binomial&) const { return "binomial"; }
    std::string operator()(const Poisson&) const { return "poisson"; }
  };
  return std::visit(Namer{}, f);
}

bool is_discrete(const Family& f) {
  return std::holds_alternative<Geometric>(f) ||
         std::holds_alternative<NegativeBinomial>(f) ||
         std::holds_alternative<Binomial>(f) ||
         std::holds_alternative<Poisson>(f);
}

double mean(const Family& f) {
  struct Mean {
    double operator()(const InverseGaussian& g) const { return g.mu; }
    double operator()(const Exponential& g) const { return g.theta; }
    double operator()(const Gamma& g) const { return g.k * g.theta; }
    double operator()(const Geometric& g) const { return g.theta; }
    double operator()(const NegativeBinomial& g) const { return g.k * g.theta; }
    double operator()(const Binomial& g) const { return g.n * g.p; }
    double operator()(const Poisson& g) const { return g.lambda; }
  };
  return std::visit(Mean{}, f);
}

double variance_function(const Family& f, double mu) {
  struct Var {
    double mu;
    double operator()(const InverseGaussian& g) const {
      require(mu > 0.0, "mu must be positive");
      return mu * mu * mu / g.lambda;
    }
    double operator()(const Exponential&) const {
      require(mu > 0.0, "mu must be positive");
      return mu * mu;
    }
    double operator()(const Gamma& g) const {
      require(mu > 0.0, "mu must be positive");
      return mu * mu / g.k;
    }
    double operator()(const Geometric&) const {
      require(mu > 0.0, "mu must be positive");
      return mu * (1.0 + mu);
    }
    double operator()(const NegativeBinomial& g) const {
      require(mu > 0.0, "mu must be positive");
      return mu * (1.0 + mu / g.k);
    }
    double operator()(const Binomial& g) const {
      require(mu > 0.0 && mu < g.n, "mu must lie in (0,n)");
      return mu * (1.0 - mu / g.n);
    }
    double operator()(const Poisson&) const {
      require(mu > 0.0, "mu must be positive");
      return mu;
    }
  };
  require(std::isfinite(mu), "mu must be finite");
  return std::visit(Var{mu}, f);
}

// x*log(y) with the 0*log 0 = 0 convention used on support boundaries.
static double xlogy(double x, double y) {
  return x == 0.0 ? 0.0 : x * std::log(y);
}

// r - 1 - ln r written as d - log1p(d) with d = r - 1, which keeps full
// precision near r = 1 where the direct form cancels.
static double rel_entropy_core(double r) {
  double d = r - 1.0;
  return d - std::log1p(d);
}

// Signed log-likelihood of the unit-mean exponential distribution:
// gamma(t) = sign(t-1) * sqrt(2 (t - 1 - ln t)).
static double gamma_unit(double t) {
  double d = 2.0 * rel_entropy_core(t);
  return t < 1.0 ? -std::sqrt(d) : std::sqrt(d);
}

// Divergence between geometric distributions with means x and theta.
static double geo_div(double x, double theta) {
  if (x == 0.0) return std::log1p(theta);
  return x * std::log(x / theta) - (x + 1.0) * (std::log1p(x) - std::log1p(theta));
}

// Signed log-likelihood of the geometric distribution with mean theta,
// extended to real arguments x >= 0.
static double geo_g(double x, double theta) {
  double d = 2.0 * geo_div(x, theta);
  d = std::max(d, 0.0);
  return x < theta ? -std::sqrt(d) : std::sqrt(d);
}

static double bin_div(int n, double mu1, double mu2) {
  double q = mu1 / n;
  double p = mu2 / n;
  return n * (xlogy(q, q / p) + xlogy(1.0 - q, (1.0 - q) / (1.0 - p)));
}

static double pois_div(double mu1, double mu2) {
  return xlogy(mu1, mu1 / mu2) - mu1 + mu2;
}

double divergence(const Family& f, double mu1, double mu2) {
  require(std::isfinite(mu1) && std::isfinite(mu2), "means must be finite");
  struct Div {
    double mu1, mu2;
    double operator()(const InverseGaussian& g) const {
      require(mu1 > 0.0 && mu2 > 0.0, "mu must be positive");
      double d = mu1 - mu2;
      return g.lambda * d * d / (2.0 * mu1 * mu2 * mu2);
    }
    double operator()(const Exponential&) const {
      require(mu1 > 0.0 && mu2 > 0.0, "mu must be positive");
      return rel_entropy_core(mu1 / mu2);
    }
    double operator()(const Gamma& g) const {
      require(mu1 > 0.0 && mu2 > 0.0, "mu must be positive");
      return g.k * rel_entropy_core(mu1 / mu2);
    }
    double operator()(const Geometric&) const {
      require(mu1 >= 0.0 && mu2 > 0.0, "mu must be nonnegative (mu2 positive)");
      return geo_div(mu1, mu2);
    }
    double operator()(const NegativeBinomial& g) const {
      require(mu1 >= 0.0 && mu2 > 0.0, "mu must be nonnegative (mu2 positive)");
      return g.k * geo_div(mu1 / g.k, mu2 / g.k);
    }
    double operator()(const Binomial& g) const {
      require(mu1 >= 0.0 && mu1 <= g.n, "mu1 must lie in [0,n]");
      require(mu2 > 0.0 && mu2 < g.n, "mu2 must lie in (0,n)");
      return bin_div(g.n, mu1, mu2);
    }
    double operator()(const Poisson&) const {
      require(mu1 >= 0.0 && mu2 > 0.0, "mu must be nonnegative (mu2 positive)");
      return pois_div(mu1, mu2);
    }
  };
  return std::visit(Div{mu1, mu2}, f);
}

static void check_support(const Family& f, double x) {
  require(std::isfinite(x), "x must be finite");
  struct Sup {
    double x;
    void operator()(const InverseGaussian&) const { require(x > 0.0, "x must be positive"); }
    void operator()(const Exponential&) const { require(x > 0.0, "x must be positive"); }
    void operator()(const Gamma&) const { require(x > 0.0, "x must be positive"); }
    void operator()(const Geometric&) const { require(x >= 0.0, "x must be nonnegative"); }
    void operator()(const NegativeBinomial&) const { require(x >= 0.0, "x must be nonnegative"); }
    void operator()(const Binomial& g) const { require(x >= 0.0 && x <= g.n, "x must lie in [0,n]"); }
    void operator()(const Poisson&) const { require(x >= 0.0, "x must be nonnegative"); }
  };
  std::visit(Sup{x}, f);
}

double signed_ll(const Family& f, double x) {
  check_support(f, x);
  struct SLL {
    double x;
    double operator()(const InverseGaussian& g) const {
      return std::sqrt(g.lambda) * (x - g.mu) / (std::sqrt(x) * g.mu);
    }
    double operator()(const Exponential& g) const { return gamma_unit(x / g.theta); }
    double operator()(const Gamma& g) const {
      return std::sqrt(g.k) * gamma_unit(x / (g.k * g.theta));
    }
    double operator()(const Geometric& g) const { return geo_g(x, g.theta); }
    double operator()(const NegativeBinomial& g) const {
      return std::sqrt(g.k) * geo_g(x / g.k, g.theta);
    }
    double operator()(const Binomial& g) const {
      double d = 2.0 * bin_div(g.n, x, g.n * g.p);
      d = std::max(d, 0.0);
      return x < g.n * g.p ? -std::sqrt(d) : std::sqrt(d);
    }
    double operator()(const Poisson& g) const {
      double d = 2.0 * pois_div(x, g.lambda);
      d = std::max(d, 0.0);
      return x < g.lambda ? -std::sqrt(d) : std::sqrt(d);
    }
  };
  return std::visit(SLL{x}, f);
}

// Bisection on an increasing function with g(lo) <= z <= g(hi).
// 60 halvings pin the root to about one part in 1e18 of the bracket.
template <class G>
static double bisect_increasing(G&& g, double lo, double hi, double z) {
  for (int i = 0; i < 60; i++) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < z)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Two guarded Newton corrections on G(x) = z. dg must be dG/dx > 0.
template <class G, class DG>
static double newton_polish(G&& g, DG&& dg, double x, double z, double lo, double hi) {
  for (int i = 0; i < 2; i++) {
    double err = g(x) - z;
    if (err == 0.0) break;
    double d = dg(x);
    if (!std::isfinite(d) || d <= 0.0) break;
    double xn = x - err / d;
    if (!(xn > lo && xn < hi)) break;
    x = xn;
  }
  return x;
}

// Inverse of gamma_unit. The root is bracketed first: for z > 0 the
// bound t <= 1 + z^2 + 2z*e follows from ln t <= t/e, for z < 0 the
// lower endpoint is shrunk geometrically until it is past the root.
static double gamma_unit_inv(double z) {
  if (z == 0.0) return 1.0;
  double lo, hi;
  if (z > 0.0) {
    lo = 1.0;
    hi = 1.0 + z * z + 2.0 * z * M_E;
    while (gamma_unit(hi) < z)
      hi = 1.0 + 2.0 * (hi - 1.0);
  } else {
    hi = 1.0;
    lo = 0.5;
    while (gamma_unit(lo) > z)
      lo *= 0.5;
  }
  double t = bisect_increasing(gamma_unit, lo, hi, z);
  return newton_polish(
      gamma_unit, [](double u) { return (1.0 - 1.0 / u) / gamma_unit(u); }, t, z, lo, hi);
}

double signed_ll_inverse(const Family& f, double z) {
  require(std::isfinite(z), "z must be finite");
  struct Inv {
    double z;
    double operator()(const InverseGaussian& g) const {
      // Substituting w = mu u^2 reduces G(w) = z to u - 1/u = c with
      // c = z sqrt(mu/lambda), whose positive root is closed form.
      double c = z * std::sqrt(g.mu / g.lambda);
      double u = 0.5 * (c + std::sqrt(c * c + 4.0));
      return g.mu * u * u;
    }
    double operator()(const Exponential& g) const { return g.theta * gamma_unit_inv(z); }
    double operator()(const Gamma& g) const {
      return g.k * g.theta * gamma_unit_inv(z / std::sqrt(g.k));
    }
    double operator()(const Geometric& g) const { return geo_like_inv(z, g.theta, 1.0); }
    double operator()(const NegativeBinomial& g) const {
      return geo_like_inv(z, g.theta, g.k);
    }
    double operator()(const Binomial& g) const {
      double n = g.n, p = g.p;
      double z_lo = -std::sqrt(-2.0 * n * std::log1p(-p));
      double z_hi = std::sqrt(-2.0 * n * std::log(p));
      double snap = 1e-12 * std::max(1.0, std::max(std::fabs(z_lo), std::fabs(z_hi)));
      if (z <= z_lo) {
        if (z >= z_lo - snap) return 0.0;
        throw std::range_error("z below the attainable range of G");
      }
      if (z >= z_hi) {
        if (z <= z_hi + snap) return n;
        throw std::range_error("z above the attainable range of G");
      }
      if (z == 0.0) return n * p;
      Family fam = g;
      auto gf = [&](double x) { return signed_ll(fam, x); };
      double x = bisect_increasing(gf, 0.0, n, z);
      auto dg = [&](double xx) {
        double q = xx / n, pp = g.p;
        double ddiv = std::log(q / pp) - std::log((1.0 - q) / (1.0 - pp));
        return ddiv / gf(xx);
      };
      return newton_polish(gf, dg, x, z, 0.0, n);
    }
    double operator()(const Poisson& g) const {
      double lam = g.lambda;
      double z_lo = -std::sqrt(2.0 * lam);
      if (z <= z_lo) {
        if (z >= z_lo - 1e-12 * std::max(1.0, std::fabs(z_lo))) return 0.0;
        throw std::range_error("z below the attainable range of G");
      }
      if (z == 0.0) return lam;
      Family fam = g;
      auto gf = [&](double x) { return signed_ll(fam, x); };
      double lo = 0.0, hi = lam;
      if (z > 0.0) {
        lo = lam;
        hi = 2.0 * lam + 2.0;
        while (gf(hi) < z) hi *= 2.0;
      }
      double x = bisect_increasing(gf, lo, hi, z);
      auto dg = [&](double xx) { return std::log(xx / lam) / gf(xx); };
      return newton_polish(gf, dg, x, z, lo, hi);
    }

    // Shared inverse for geometric (k = 1) and negative binomial:
    // G(x) = sqrt(k) * g_theta(x/k).
    static double geo_like_inv(double z, double theta, double k) {
      double zs = z / std::sqrt(k);
      double z_lo = -std::sqrt(2.0 * std::log1p(theta));
      if (zs <= z_lo) {
        if (zs >= z_lo - 1e-12 * std::max(1.0, std::fabs(z_lo))) return 0.0;
        throw std::range_error("z below the attainable range of G");
      }
      if (zs == 0.0) return k * theta;
      auto gf = [&](double x) { return geo_g(x, theta); };
      double lo = 0.0, hi = theta;
      if (zs > 0.0) {
        lo = theta;
        hi = 2.0 * theta + 2.0;
        while (gf(hi) < zs) hi *= 2.0;
      }
      double x = bisect_increasing(gf, lo, hi, zs);
      auto dg = [&](double xx) {
        double ddiv = std::log(xx / theta) - (std::log1p(xx) - std::log1p(theta));
        return ddiv / gf(xx);
      };
      return k * newton_polish(gf, dg, x, zs, lo, hi);
    }
  };
  return std::visit(Inv{z}, f);
}

static void require_continuous(const Family& f, const char* op) {
  if (is_discrete(f))
    throw std::invalid_argument(std::string(op) + " requires a continuous family");
}

// log of the saddle-point constant for Gamma(k, .): k^k e^-k sqrt(tau/k) / Gamma(k).
// Kept in log space so large k does not overflow.
static double log_gamma_saddle_const(double k) {
  return k * std::log(k) - k - log_gamma(k) + 0.5 * std::log(tau) - 0.5 * std::log(k);
}

double saddlepoint_density(const Family& f, double x) {
  require_continuous(f, "saddlepoint_density");
  check_support(f, x);
  struct Saddle {
    double x;
    double operator()(const InverseGaussian& g) const {
      double z = std::sqrt(g.lambda) * (x - g.mu) / (std::sqrt(x) * g.mu);
      return gaussian_pdf(z) * std::sqrt(g.lambda / (x * x * x));
    }
    double operator()(const Exponential& g) const {
      double z = gamma_unit(x / g.theta);
      return std::sqrt(tau) / M_E * gaussian_pdf(z) / x;
    }
    double operator()(const Gamma& g) const {
      double z = std::sqrt(g.k) * gamma_unit(x / (g.k * g.theta));
      return std::exp(log_gamma_saddle_const(g.k)) * gaussian_pdf(z) * std::sqrt(g.k) / x;
    }
    double operator()(const Geometric&) const { throw std::invalid_argument("discrete"); }
    double operator()(const NegativeBinomial&) const { throw std::invalid_argument("discrete"); }
    double operator()(const Binomial&) const { throw std::invalid_argument("discrete"); }
    double operator()(const Poisson&) const { throw std::invalid_argument("discrete"); }
  };
  return std::visit(Saddle{x}, f);
}

// Density of G(X) away from the removable singularity at z = 0.
static double signed_ll_density_at(const Family& f, double z) {
  struct Dens {
    double z;
    double operator()(const InverseGaussian& g) const {
      double c = z * std::sqrt(g.mu / g.lambda);
      double u = 0.5 * (c + std::sqrt(c * c + 4.0));
      return 2.0 * gaussian_pdf(z) / (1.0 + u * u);
    }
    double operator()(const Exponential&) const {
      return std::sqrt(tau) / M_E * z * gaussian_pdf(z) / (gamma_unit_inv(z) - 1.0);
    }
    double operator()(const Gamma& g) const {
      double zs = z / std::sqrt(g.k);
      return std::exp(log_gamma_saddle_const(g.k)) * zs * gaussian_pdf(z) /
             (gamma_unit_inv(zs) - 1.0);
    }
    double operator()(const Geometric&) const { throw std::invalid_argument("discrete"); }
    double operator()(const NegativeBinomial&) const { throw std::invalid_argument("discrete"); }
    double operator()(const Binomial&) const { throw std::invalid_argument("discrete"); }
    double operator()(const Poisson&) const { throw std::invalid_argument("discrete"); }
  };
  return std::visit(Dens{z}, f);
}

double signed_ll_density(const Family& f, double z) {
  require_continuous(f, "signed_ll_density");
  require(std::isfinite(z), "z must be finite");
  if (!std::holds_alternative<InverseGaussian>(f) && std::fabs(z) < 1e-6) {
    return 0.5 * (signed_ll_density_at(f, 1e-6) + signed_ll_density_at(f, -1e-6));
  }
  return signed_ll_density_at(f, z);
}

}  // namespace tailbound
