#include "tailbound/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "tailbound/oracles.hpp"
#include "tailbound/specialfn.hpp"

namespace tailbound {
namespace bounds {

double gaussian_lower_bound(const Family& f, double x) {
  if (is_discrete(f))
    throw std::invalid_argument("gaussian_lower_bound requires a continuous family");
  return gaussian_cdf(signed_ll(f, x));
}

TailBracket intersection_bracket(const Family& f, double m) {
  if (!std::holds_alternative<Binomial>(f) && !std::holds_alternative<Poisson>(f))
    throw std::invalid_argument("intersection_bracket requires binomial or poisson");
  double r = std::nearbyint(m);
  if (std::fabs(m - r) > 1e-9 || r < 0.0)
    throw std::domain_error("m must be a nonnegative integer");
  return TailBracket{oracles::exact_cdf(f, r - 1.0),
                     gaussian_cdf(signed_ll(f, r)), oracles::exact_cdf(f, r),
                     f, r};
}

GammaBracket negbin_gamma_bracket(double k, double theta, long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  Family nb = NegativeBinomial(k, theta);
  Family gam = Gamma(k, theta);
  GammaBracket b;
  b.x_m = signed_ll_inverse(gam, signed_ll(nb, (double)m));
  b.x_m_plus_1 = signed_ll_inverse(gam, signed_ll(nb, (double)m + 1.0));
  b.cdf_lower = oracles::exact_cdf(gam, b.x_m);
  b.cdf_upper = oracles::exact_cdf(gam, b.x_m_plus_1);
  return b;
}

GeometricSandwich geometric_sandwich(double theta, long m) {
  if (m < 1) throw std::domain_error("m must be at least 1");
  Family geo = Geometric(theta);
  GeometricSandwich s;
  // Pr(Exp <= x) = Pr(Geo < m) solves to x = theta * m * ln((theta+1)/theta).
  s.x = theta * (double)m * std::log1p(1.0 / theta);
  s.lower = signed_ll(geo, (double)m - 0.5);
  s.middle = signed_ll(Exponential(theta), s.x);
  s.upper = signed_ll(geo, (double)m);
  return s;
}

static void require_pos(double v, const char* msg) {
  if (!(std::isfinite(v) && v > 0.0)) throw std::domain_error(msg);
}

DominationOrder domination_order_ig(double mu1, double lambda1, double mu2,
                                    double lambda2) {
  require_pos(mu1, "mu must be positive");
  require_pos(lambda1, "lambda must be positive");
  require_pos(mu2, "mu must be positive");
  require_pos(lambda2, "lambda must be positive");
  // The law of G depends on mu/lambda alone; the larger ratio is the
  // heavier (dominated) one.
  double r1 = mu1 / lambda1;
  double r2 = mu2 / lambda2;
  if (r1 > r2) return DominationOrder::Dominated;
  if (r1 < r2) return DominationOrder::Dominates;
  return DominationOrder::Equal;
}

DominationOrder domination_order_gamma(double k1, double k2) {
  require_pos(k1, "k must be positive");
  require_pos(k2, "k must be positive");
  if (k1 < k2) return DominationOrder::Dominated;
  if (k1 > k2) return DominationOrder::Dominates;
  return DominationOrder::Equal;
}

double negbin_gaussian_lower(double k, double theta, long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  return gaussian_cdf(signed_ll(NegativeBinomial(k, theta), (double)m));
}

double poisson_halfstep_probe(double lambda, long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  Family po = Poisson(lambda);
  return oracles::exact_cdf(po, (double)m) - gaussian_cdf(signed_ll(po, (double)m + 0.5));
}

double matched_poisson_lambda(int n, double p, int k) {
  Family bin = Binomial(n, p);
  if (k < 0 || k > n) throw std::domain_error("k must lie in [0,n]");
  double target = signed_ll(bin, (double)k);
  // G_Po(lambda)(k) is strictly decreasing in lambda. The root usually
  // lies in (0, n] but can exceed n (k = 0 with p > 1 - 1/e), so the
  // upper end grows geometrically until it brackets.
  auto g = [&](double lam) { return signed_ll(Poisson(lam), (double)k); };
  double lo = 1e-12, hi = (double)n;
  while (g(hi) > target) hi *= 2.0;
  if (k > 0) {
    while (g(lo) < target) lo *= 0.5;
  }
  for (int i = 0; i < 200; i++) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bounds
}  // namespace tailbound
