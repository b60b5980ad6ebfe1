#include "tailbound/qq.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tailbound/oracles.hpp"
#include "tailbound/specialfn.hpp"

namespace tailbound {
namespace qq {

double cdf_quantile(const Family& f, double q) {
  if (is_discrete(f))
    throw std::invalid_argument("cdf_quantile requires a continuous family");
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("q must lie in (0,1)");
  double lo = mean(f);
  double hi = lo;
  while (oracles::exact_cdf(f, lo) > q) lo *= 0.5;
  while (oracles::exact_cdf(f, hi) < q) hi *= 2.0;
  for (int i = 0; i < 100; i++) {
    double mid = 0.5 * (lo + hi);
    if (oracles::exact_cdf(f, mid) < q)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

static double clamped_quantile(double p) {
  const double eps = 1e-12;
  return gaussian_quantile(std::min(std::max(p, eps), 1.0 - eps));
}

static std::string describe(const Family& f) {
  char buf[80];
  struct Desc {
    char* buf;
    size_t cap;
    void operator()(const InverseGaussian& g) const {
      std::snprintf(buf, cap, "ig(%g,%g)", g.mu, g.lambda);
    }
    void operator()(const Exponential& g) const {
      std::snprintf(buf, cap, "exp(%g)", g.theta);
    }
    void operator()(const Gamma& g) const {
      std::snprintf(buf, cap, "gamma(%g,%g)", g.k, g.theta);
    }
    void operator()(const Geometric& g) const {
      std::snprintf(buf, cap, "geo(%g)", g.theta);
    }
    void operator()(const NegativeBinomial& g) const {
      std::snprintf(buf, cap, "neg(%g,%g)", g.k, g.theta);
    }
    void operator()(const Binomial& g) const {
      std::snprintf(buf, cap, "bin(%d,%g)", g.n, g.p);
    }
    void operator()(const Poisson& g) const {
      std::snprintf(buf, cap, "po(%g)", g.lambda);
    }
  };
  std::visit(Desc{buf, sizeof buf}, f);
  return buf;
}

QQSeries make_series(const Family& f, int quantiles) {
  QQSeries s;
  s.label = describe(f);
  s.family = family_name(f);
  if (!is_discrete(f)) {
    if (quantiles < 1) throw std::domain_error("quantiles must be positive");
    for (int i = 1; i <= quantiles; i++) {
      double q = (double)i / (quantiles + 1);
      QQRow row;
      row.prob = q;
      row.gaussian_quantile = gaussian_quantile(q);
      row.signed_ll_quantile = signed_ll(f, cdf_quantile(f, q));
      s.rows.push_back(row);
    }
    return s;
  }
  // Staircase: one row per support point m while upper-tail mass
  // remains. The step at height G(m) spans the Gaussian quantiles of
  // Pr(M < m) and Pr(M <= m); the intersection theorems say the
  // diagonal crosses it at G(m).
  long m_hi = (long)std::floor(mean(f) + 10.0 * std::sqrt(variance_function(f, mean(f))));
  if (const Binomial* g = std::get_if<Binomial>(&f)) m_hi = g->n;
  double prev_prob = -1.0;
  for (long m = 0; m <= m_hi; m++) {
    double below = oracles::exact_cdf(f, (double)m - 1.0);
    double upto = oracles::exact_cdf(f, (double)m);
    if (upto <= prev_prob) break;
    QQRow row;
    row.prob = upto;
    row.signed_ll_quantile = signed_ll(f, (double)m);
    row.gaussian_quantile = row.signed_ll_quantile;
    row.has_step = true;
    row.step_left = clamped_quantile(below);
    row.step_right = clamped_quantile(upto);
    s.rows.push_back(row);
    prev_prob = upto;
    if (upto >= 1.0 - 1e-12) break;
  }
  return s;
}

std::vector<QQSeries> preset_series(const std::string& preset, int quantiles) {
  if (preset == "ig-1-1")
    return {make_series(InverseGaussian(1.0, 1.0), quantiles)};
  if (preset == "exp-geo-3.5")
    return {make_series(Geometric(3.5), quantiles),
            make_series(Exponential(3.5), quantiles)};
  if (preset == "bin-7-0.5")
    return {make_series(Binomial(7, 0.5), quantiles)};
  if (preset == "po-3.5")
    return {make_series(Poisson(3.5), quantiles)};
  if (preset == "neg-1-3.5")
    return {make_series(NegativeBinomial(1.0, 3.5), quantiles),
            make_series(Gamma(1.0, 3.5), quantiles)};
  throw std::invalid_argument("unknown preset: " + preset);
}

std::vector<std::string> known_presets() {
  return {"ig-1-1", "exp-geo-3.5", "bin-7-0.5", "po-3.5", "neg-1-3.5"};
}

}  // namespace qq
}  // namespace tailbound
