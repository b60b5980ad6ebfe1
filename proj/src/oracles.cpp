#include "tailbound/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "tailbound/specialfn.hpp"

namespace tailbound {
namespace oracles {

GridSpec GridSpec::linear(std::string name, double lo, double hi, int count) {
  GridSpec g;
  g.name = std::move(name);
  g.lo = lo;
  g.hi = hi;
  g.count = count;
  g.spacing = GridSpacing::Linear;
  return g;
}

GridSpec GridSpec::logarithmic(std::string name, double lo, double hi, int count) {
  GridSpec g = linear(std::move(name), lo, hi, count);
  g.spacing = GridSpacing::Log;
  return g;
}

GridSpec GridSpec::explicit_set(std::string name, std::vector<double> pts) {
  GridSpec g;
  g.name = std::move(name);
  g.spacing = GridSpacing::Explicit;
  g.explicit_points = std::move(pts);
  g.count = (int)g.explicit_points.size();
  if (g.count > 0) {
    g.lo = g.explicit_points.front();
    g.hi = g.explicit_points.back();
  }
  return g;
}

std::vector<double> GridSpec::points() const {
  if (spacing == GridSpacing::Explicit) {
    if (explicit_points.empty())
      throw std::domain_error("explicit grid needs at least 1 point");
    return explicit_points;
  }
  if (count < 2) throw std::domain_error("grid needs at least 2 points");
  if (spacing == GridSpacing::Log && !(lo > 0.0))
    throw std::domain_error("log grid needs lo > 0");
  std::vector<double> out(count);
  double a = lo, b = hi;
  if (spacing == GridSpacing::Log) {
    a = std::log(lo);
    b = std::log(hi);
  }
  for (int i = 0; i < count; i++) {
    double v = a + (b - a) * i / (count - 1);
    out[i] = spacing == GridSpacing::Log ? std::exp(v) : v;
  }
  return out;
}

// Compensated accumulator for the discrete CDF summations.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

static long round_to_index(double x) {
  double r = std::nearbyint(x);
  if (std::fabs(x - r) > 1e-9)
    throw std::domain_error("discrete families require integer x");
  return (long)r;
}

static double pois_log_pmf(double lambda, long i) {
  return -lambda + i * std::log(lambda) - log_gamma((double)i + 1.0);
}

static double negbin_log_pmf(double k, double theta, long i) {
  double lp = std::log(theta) - std::log1p(theta);
  return log_gamma(i + k) - log_gamma((double)i + 1.0) - log_gamma(k) + i * lp -
         k * std::log1p(theta);
}

static double bin_log_pmf(int n, double p, long i) {
  return log_gamma(n + 1.0) - log_gamma(i + 1.0) - log_gamma((double)(n - i) + 1.0) +
         i * std::log(p) + (n - i) * std::log1p(-p);
}

// Sums pmf terms 0..m with Kahan compensation. Terms past the mode that
// fall below 1e-18 of the running sum no longer move the result and are
// skipped (the pmf is unimodal, so later terms are smaller still).
template <class LogPmf>
static double sum_pmf(long m, double mode, LogPmf&& lp) {
  KahanSum acc;
  for (long i = 0; i <= m; i++) {
    double term = std::exp(lp(i));
    acc.add(term);
    if (i > mode && term < 1e-18 * acc.s)
      break;
  }
  return std::min(acc.s, 1.0);
}

double exact_cdf(const Family& f, double x) {
  if (std::isnan(x)) throw std::domain_error("x must not be NaN");
  struct Cdf {
    double x;
    double operator()(const InverseGaussian& g) const {
      if (x <= 0.0) return 0.0;
      // Two-term closed form. The second term exp(2 lambda/mu) Phi(-s2)
      // multiplies a huge exponential by a tiny tail, so it is assembled
      // in log space once the exponent gets large.
      double sl = std::sqrt(g.lambda / x);
      double t1 = gaussian_cdf(sl * (x / g.mu - 1.0));
      double e = 2.0 * g.lambda / g.mu;
      double s2 = sl * (x / g.mu + 1.0);
      double t2;
      if (e < 650.0) {
        t2 = std::exp(e) * gaussian_cdf(-s2);
      } else {
        // log Phi(-s2) = log(0.5 Q(1/2, s2^2/2)); s2 is large here.
        double lphi = std::log(0.5) + log_reg_inc_gamma_upper(0.5, 0.5 * s2 * s2);
        t2 = std::exp(e + lphi);
      }
      return std::min(t1 + t2, 1.0);
    }
    double operator()(const Exponential& g) const {
      if (x <= 0.0) return 0.0;
      return -std::expm1(-x / g.theta);
    }
    double operator()(const Gamma& g) const {
      if (x <= 0.0) return 0.0;
      return reg_inc_gamma_lower(g.k, x / g.theta);
    }
    double operator()(const Geometric& g) const {
      if (x < -0.5) return 0.0;
      long m = round_to_index(x);
      if (m < 0) return 0.0;
      // Pr(M <= m) = 1 - (theta/(theta+1))^(m+1).
      double lr = std::log(g.theta) - std::log1p(g.theta);
      return -std::expm1((m + 1) * lr);
    }
    double operator()(const NegativeBinomial& g) const {
      if (x < -0.5) return 0.0;
      long m = round_to_index(x);
      if (m < 0) return 0.0;
      double mode = g.k * g.theta;
      return sum_pmf(m, mode, [&](long i) { return negbin_log_pmf(g.k, g.theta, i); });
    }
    double operator()(const Binomial& g) const {
      if (x < -0.5) return 0.0;
      if (x >= g.n) return 1.0;
      long m = round_to_index(x);
      if (m < 0) return 0.0;
      double mode = g.n * g.p;
      return sum_pmf(m, mode, [&](long i) { return bin_log_pmf(g.n, g.p, i); });
    }
    double operator()(const Poisson& g) const {
      if (x < -0.5) return 0.0;
      long m = round_to_index(x);
      if (m < 0) return 0.0;
      return sum_pmf(m, g.lambda, [&](long i) { return pois_log_pmf(g.lambda, i); });
    }
  };
  return std::visit(Cdf{x}, f);
}

double exact_pdf(const Family& f, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("x must be positive");
  struct Pdf {
    double x;
    double operator()(const InverseGaussian& g) const {
      double lf = 0.5 * (std::log(g.lambda) - std::log(tau) - 3.0 * std::log(x));
      double d = x - g.mu;
      return std::exp(lf - g.lambda * d * d / (2.0 * g.mu * g.mu * x));
    }
    double operator()(const Exponential& g) const {
      return std::exp(-x / g.theta) / g.theta;
    }
    double operator()(const Gamma& g) const {
      double lf = (g.k - 1.0) * std::log(x) - x / g.theta - log_gamma(g.k) -
                  g.k * std::log(g.theta);
      return std::exp(lf);
    }
    double operator()(const Geometric&) const { return unsupported(); }
    double operator()(const NegativeBinomial&) const { return unsupported(); }
    double operator()(const Binomial&) const { return unsupported(); }
    double operator()(const Poisson&) const { return unsupported(); }
    static double unsupported() {
      throw std::invalid_argument("exact_pdf requires a continuous family");
    }
  };
  return std::visit(Pdf{x}, f);
}

double pmf(const Family& f, double m_in) {
  long m = round_to_index(m_in);
  struct Pmf {
    long m;
    double operator()(const Geometric& g) const {
      if (m < 0) return 0.0;
      return std::exp(m * (std::log(g.theta) - std::log1p(g.theta)) - std::log1p(g.theta));
    }
    double operator()(const NegativeBinomial& g) const {
      if (m < 0) return 0.0;
      return std::exp(negbin_log_pmf(g.k, g.theta, m));
    }
    double operator()(const Binomial& g) const {
      if (m < 0 || m > g.n) return 0.0;
      return std::exp(bin_log_pmf(g.n, g.p, m));
    }
    double operator()(const Poisson& g) const {
      if (m < 0) return 0.0;
      return std::exp(pois_log_pmf(g.lambda, m));
    }
    double operator()(const InverseGaussian&) const { return unsupported(); }
    double operator()(const Exponential&) const { return unsupported(); }
    double operator()(const Gamma&) const { return unsupported(); }
    static double unsupported() {
      throw std::invalid_argument("pmf requires a discrete family");
    }
  };
  return std::visit(Pmf{m}, f);
}

// Adaptive Simpson with Richardson extrapolation. Each subinterval is
// accepted once its two-panel refinement agrees with the single panel
// to its proportional share of the global tolerance.
static double simpson_rec(const std::function<double(double)>& fn, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = fn(lm);
  double frm = fn(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth > 48 || std::fabs(delta) < 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& fn, double a, double b,
                 double tol) {
  if (!(a <= b)) throw std::domain_error("integrate requires a <= b");
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = fn(a), fm = fn(m), fb = fn(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(fn, a, b, fa, fm, fb, whole, tol, 0);
}

double numeric_divergence(const Family& f, double mu1, double mu2) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2))
    throw std::domain_error("means must be finite");
  // Interior-domain check; variance_function throws on the boundary.
  variance_function(f, mu1);
  variance_function(f, mu2);
  double lo = std::min(mu1, mu2);
  double hi = std::max(mu1, mu2);
  if (lo == hi) return 0.0;
  auto integrand = [&](double mu) { return (mu - mu1) / variance_function(f, mu); };
  double v = integrate(integrand, lo, hi, 1e-12);
  // The integrand is signed so that integrating toward mu2 in either
  // direction yields a nonnegative divergence.
  return mu1 <= mu2 ? v : -v;
}

double numeric_signed_ll_density(const Family& f, double z, double h) {
  if (is_discrete(f))
    throw std::invalid_argument("numeric_signed_ll_density requires a continuous family");
  if (!(h >= 1e-7 && h <= 1e-3))
    throw std::domain_error("h must lie in [1e-7, 1e-3]");
  double xp = signed_ll_inverse(f, z + h);
  double xm = signed_ll_inverse(f, z - h);
  return (exact_cdf(f, xp) - exact_cdf(f, xm)) / (2.0 * h);
}

double derivative_lemma_residual(const Family& f, double point, double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw std::domain_error("h must lie in (0, 1e-2]");
  if (const Poisson* g = std::get_if<Poisson>(&f)) {
    long m = round_to_index(point);
    double fd = (exact_cdf(Poisson(g->lambda + h), (double)m) -
                 exact_cdf(Poisson(g->lambda - h), (double)m)) /
                (2.0 * h);
    return std::fabs(fd + pmf(*g, (double)m));
  }
  if (const Gamma* g = std::get_if<Gamma>(&f)) {
    double mu = g->k * g->theta;
    double fd = (exact_cdf(Gamma(g->k, (mu + h) / g->k), point) -
                 exact_cdf(Gamma(g->k, (mu - h) / g->k), point)) /
                (2.0 * h);
    return std::fabs(fd + exact_pdf(Gamma(g->k + 1.0, g->theta), point));
  }
  if (const NegativeBinomial* g = std::get_if<NegativeBinomial>(&f)) {
    long m = round_to_index(point);
    double mu = g->k * g->theta;
    double fd = (exact_cdf(NegativeBinomial(g->k, (mu + h) / g->k), (double)m) -
                 exact_cdf(NegativeBinomial(g->k, (mu - h) / g->k), (double)m)) /
                (2.0 * h);
    return std::fabs(fd + pmf(NegativeBinomial(g->k + 1.0, g->theta), (double)m));
  }
  throw std::invalid_argument(
      "derivative_lemma_residual supports poisson, gamma, and negbin");
}

}  // namespace oracles
}  // namespace tailbound
