#include "tailbound/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tailbound/bounds.hpp"
#include "tailbound/specialfn.hpp"

namespace tailbound {
namespace checkers {

GridSpec default_z_grid() { return GridSpec::linear("z", -6.0, 6.0, 2001); }

namespace {

using Location = std::vector<std::pair<std::string, double>>;

// Running minimum of the slack together with where it happened.
struct SlackMin {
  double min_slack = std::numeric_limits<double>::infinity();
  Location argmin;
  long points = 0;

  void observe(double slack, Location loc) {
    points++;
    if (slack < min_slack) {
      min_slack = slack;
      argmin = std::move(loc);
    }
  }
};

CheckReport finish(std::string id, std::vector<GridSpec> grids, const SlackMin& acc,
                   double tol) {
  CheckReport r;
  r.check_id = std::move(id);
  r.grid = std::move(grids);
  r.points_evaluated = acc.points;
  r.min_slack = acc.min_slack;
  r.argmin_location = acc.argmin;
  r.tolerance = tol;
  r.verdict = acc.min_slack >= -tol ? "pass" : "fail";
  return r;
}

void require_continuous_pair(const Family& fd, const std::optional<Family>& fr) {
  if (is_discrete(fd) || (fr && is_discrete(*fr)))
    throw std::invalid_argument("domination checks require continuous families");
}

// Gamma shape of a family for ordering purposes; Exponential counts as
// shape 1. Empty for anything that is not Gamma-like.
std::optional<double> gamma_shape(const Family& f) {
  if (const Gamma* g = std::get_if<Gamma>(&f)) return g->k;
  if (std::holds_alternative<Exponential>(f)) return 1.0;
  return std::nullopt;
}

// Puts the theorem-dominated family first for family-vs-family checks.
void orient_pair(Family& fd, Family& fr) {
  const InverseGaussian* a = std::get_if<InverseGaussian>(&fd);
  const InverseGaussian* b = std::get_if<InverseGaussian>(&fr);
  if (a && b) {
    if (bounds::domination_order_ig(a->mu, a->lambda, b->mu, b->lambda) ==
        bounds::DominationOrder::Dominates)
      std::swap(fd, fr);
    return;
  }
  std::optional<double> k1 = gamma_shape(fd);
  std::optional<double> k2 = gamma_shape(fr);
  if (k1 && k2) {
    if (*k1 > *k2) std::swap(fd, fr);
    return;
  }
  throw std::invalid_argument(
      "domination is only known for gamma-vs-gamma or ig-vs-ig pairs");
}

// slack(z) = Pr(G_dom <= z) - Pr(G_ref <= z) over the z grid.
void sweep_domination(const Family& fd, const std::optional<Family>& fr,
                      const GridSpec& z_grid, SlackMin& acc, const Location& base) {
  for (double z : z_grid.points()) {
    double cdf_dom = oracles::exact_cdf(fd, signed_ll_inverse(fd, z));
    double cdf_ref =
        fr ? oracles::exact_cdf(*fr, signed_ll_inverse(*fr, z)) : gaussian_cdf(z);
    Location loc = base;
    loc.emplace_back("z", z);
    acc.observe(cdf_dom - cdf_ref, std::move(loc));
  }
}

std::string pair_id(const Family& fd, const std::optional<Family>& fr) {
  return family_name(fd) + "-vs-" + (fr ? family_name(*fr) : "gaussian");
}

long default_m_cap(double mean, double variance) {
  return (long)std::floor(mean + 10.0 * std::sqrt(variance));
}

const std::vector<double> shape_set = {0.5, 1.0, 2.0, 5.0, 20.0};
const std::vector<double> ratio_set = {0.25, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> negbin_theta_set = {0.25, 1.0, 3.5, 10.0};

CheckReport matrix_ig_gaussian(double tol) {
  SlackMin acc;
  GridSpec zg = default_z_grid();
  GridSpec lg = GridSpec::explicit_set("lambda", {0.25, 1.0, 4.0});
  for (double lam : lg.points())
    sweep_domination(InverseGaussian(1.0, lam), std::nullopt, zg, acc,
                     {{"mu", 1.0}, {"lambda", lam}});
  return finish("ig-vs-gaussian", {lg, zg}, acc, tol);
}

CheckReport matrix_ig_ig(double tol) {
  SlackMin acc;
  GridSpec zg = default_z_grid();
  GridSpec rg = GridSpec::explicit_set("ratio", ratio_set);
  for (double r1 : ratio_set) {
    for (double r2 : ratio_set) {
      Family fd = InverseGaussian(r1, 1.0);
      Family fr = InverseGaussian(r2, 1.0);
      orient_pair(fd, fr);
      std::optional<Family> ref = fr;
      sweep_domination(fd, ref, zg, acc, {{"ratio1", r1}, {"ratio2", r2}});
    }
  }
  return finish("ig-vs-ig", {rg, rg, zg}, acc, tol);
}

CheckReport matrix_gamma_gaussian(double tol) {
  SlackMin acc;
  GridSpec zg = default_z_grid();
  GridSpec kg = GridSpec::explicit_set("k", shape_set);
  for (double k : shape_set)
    sweep_domination(Gamma(k, 1.0), std::nullopt, zg, acc, {{"k", k}});
  return finish("gamma-vs-gaussian", {kg, zg}, acc, tol);
}

CheckReport matrix_gamma_gamma(double tol) {
  SlackMin acc;
  GridSpec zg = default_z_grid();
  GridSpec kg = GridSpec::explicit_set("k", shape_set);
  for (size_t i = 0; i < shape_set.size(); i++) {
    for (size_t j = i + 1; j < shape_set.size(); j++) {
      std::optional<Family> ref = Family(Gamma(shape_set[j], 1.0));
      sweep_domination(Gamma(shape_set[i], 1.0), ref, zg, acc,
                       {{"k1", shape_set[i]}, {"k2", shape_set[j]}});
    }
  }
  return finish("gamma-vs-gamma", {kg, kg, zg}, acc, tol);
}

CheckReport matrix_geometric_exponential(double tol, const std::optional<GridSpec>& tg_in,
                                         const std::optional<long>& m_max) {
  SlackMin acc;
  GridSpec tg = tg_in ? *tg_in : GridSpec::logarithmic("theta", 0.1, 100.0, 20);
  long m_cap = m_max ? *m_max : 200;
  for (double theta : tg.points()) {
    for (long m = 1; m <= m_cap; m++) {
      bounds::GeometricSandwich s = bounds::geometric_sandwich(theta, m);
      acc.observe(s.middle - s.lower,
                  {{"theta", theta}, {"m", (double)m}, {"side", 0.0}});
      acc.observe(s.upper - s.middle,
                  {{"theta", theta}, {"m", (double)m}, {"side", 1.0}});
    }
  }
  GridSpec mg = GridSpec::linear("m", 1.0, (double)m_cap, (int)m_cap);
  return finish("geometric-exponential", {tg, mg}, acc, tol);
}

CheckReport matrix_negbin_gamma(double tol, const std::optional<GridSpec>& tg_in,
                                const std::optional<long>& m_max) {
  SlackMin acc;
  GridSpec kg = GridSpec::explicit_set("k", shape_set);
  GridSpec tg = tg_in ? *tg_in : GridSpec::explicit_set("theta", negbin_theta_set);
  for (double k : kg.points()) {
    for (double theta : tg.points()) {
      Family nb = NegativeBinomial(k, theta);
      long m_cap =
          m_max ? *m_max : default_m_cap(k * theta, k * theta * (1.0 + theta));
      for (long m = 0; m <= m_cap; m++) {
        bounds::GammaBracket b = bounds::negbin_gamma_bracket(k, theta, m);
        double cdf = oracles::exact_cdf(nb, (double)m);
        acc.observe(cdf - b.cdf_lower,
                    {{"k", k}, {"theta", theta}, {"m", (double)m}, {"side", 0.0}});
        acc.observe(b.cdf_upper - cdf,
                    {{"k", k}, {"theta", theta}, {"m", (double)m}, {"side", 1.0}});
      }
    }
  }
  return finish("negbin-gamma", {kg, tg}, acc, tol);
}

CheckReport matrix_binomial_gaussian(double tol, const std::optional<long>& m_max) {
  SlackMin acc;
  GridSpec ng = GridSpec::linear("n", 1.0, 60.0, 60);
  GridSpec pg = GridSpec::linear("p", 0.05, 0.95, 19);
  for (int n = 1; n <= 60; n++) {
    for (int i = 1; i <= 19; i++) {
      double p = i / 20.0;
      Family f = Binomial(n, p);
      long k_cap = m_max ? std::min((long)n, *m_max) : n;
      for (long k = 0; k <= k_cap; k++) {
        bounds::TailBracket b = bounds::intersection_bracket(f, (double)k);
        acc.observe(b.gaussian_value - b.lower,
                    {{"n", (double)n}, {"p", p}, {"m", (double)k}, {"side", 0.0}});
        acc.observe(b.upper - b.gaussian_value,
                    {{"n", (double)n}, {"p", p}, {"m", (double)k}, {"side", 1.0}});
      }
    }
  }
  return finish("binomial-gaussian", {ng, pg}, acc, tol);
}

CheckReport matrix_poisson_gaussian(double tol, const std::optional<GridSpec>& lg_in,
                                    const std::optional<long>& m_max) {
  SlackMin acc;
  GridSpec lg = lg_in ? *lg_in : GridSpec::logarithmic("lambda", 0.1, 50.0, 25);
  for (double lam : lg.points()) {
    Family f = Poisson(lam);
    long m_cap = m_max ? *m_max : default_m_cap(lam, lam);
    for (long m = 0; m <= m_cap; m++) {
      bounds::TailBracket b = bounds::intersection_bracket(f, (double)m);
      acc.observe(b.gaussian_value - b.lower,
                  {{"lambda", lam}, {"m", (double)m}, {"side", 0.0}});
      acc.observe(b.upper - b.gaussian_value,
                  {{"lambda", lam}, {"m", (double)m}, {"side", 1.0}});
    }
  }
  return finish("poisson-gaussian", {lg}, acc, tol);
}

}  // namespace

CheckReport check_domination_directed(const Family& dominated,
                                      const std::optional<Family>& reference,
                                      const GridSpec& z_grid, double tolerance) {
  require_continuous_pair(dominated, reference);
  SlackMin acc;
  sweep_domination(dominated, reference, z_grid, acc, {});
  return finish(pair_id(dominated, reference), {z_grid}, acc, tolerance);
}

CheckReport check_domination(const Family& dominated,
                             const std::optional<Family>& reference,
                             const GridSpec& z_grid, double tolerance) {
  require_continuous_pair(dominated, reference);
  Family fd = dominated;
  std::optional<Family> fr = reference;
  if (fr) {
    orient_pair(fd, *fr);
  }
  return check_domination_directed(fd, fr, z_grid, tolerance);
}

CheckReport check_density_ratio(const Family& dominated,
                                const std::optional<Family>& reference,
                                const GridSpec& z_grid, double tolerance) {
  require_continuous_pair(dominated, reference);
  Family fd = dominated;
  std::optional<Family> fr = reference;
  if (fr) orient_pair(fd, *fr);
  auto log_ratio = [&](double z) {
    double ref = fr ? std::log(signed_ll_density(*fr, z))
                    : -0.5 * z * z - 0.5 * std::log(tau);
    return ref - std::log(signed_ll_density(fd, z));
  };
  SlackMin acc;
  std::vector<double> zs = z_grid.points();
  double prev = log_ratio(zs[0]);
  for (size_t i = 1; i < zs.size(); i++) {
    double cur = log_ratio(zs[i]);
    acc.observe(cur - prev, {{"z", zs[i - 1]}});
    prev = cur;
  }
  return finish("density-ratio-" + pair_id(fd, fr), {z_grid}, acc, tolerance);
}

CheckReport check_intersection(const Family& f, long m_max, double tolerance) {
  SlackMin acc;
  long m_cap;
  if (const Binomial* g = std::get_if<Binomial>(&f)) {
    m_cap = m_max > 0 ? std::min((long)g->n, m_max) : g->n;
    for (long m = 0; m <= m_cap; m++) {
      bounds::TailBracket b = bounds::intersection_bracket(f, (double)m);
      acc.observe(b.gaussian_value - b.lower, {{"m", (double)m}, {"side", 0.0}});
      acc.observe(b.upper - b.gaussian_value, {{"m", (double)m}, {"side", 1.0}});
    }
  } else if (std::holds_alternative<Poisson>(f)) {
    double lam = std::get<Poisson>(f).lambda;
    m_cap = m_max > 0 ? m_max : default_m_cap(lam, lam);
    for (long m = 0; m <= m_cap; m++) {
      bounds::TailBracket b = bounds::intersection_bracket(f, (double)m);
      acc.observe(b.gaussian_value - b.lower, {{"m", (double)m}, {"side", 0.0}});
      acc.observe(b.upper - b.gaussian_value, {{"m", (double)m}, {"side", 1.0}});
    }
  } else if (std::holds_alternative<Geometric>(f) ||
             std::holds_alternative<NegativeBinomial>(f)) {
    double k = 1.0, theta;
    if (const NegativeBinomial* g = std::get_if<NegativeBinomial>(&f)) {
      k = g->k;
      theta = g->theta;
    } else {
      theta = std::get<Geometric>(f).theta;
    }
    m_cap = m_max > 0 ? m_max : default_m_cap(k * theta, k * theta * (1.0 + theta));
    for (long m = 0; m <= m_cap; m++) {
      bounds::GammaBracket b = bounds::negbin_gamma_bracket(k, theta, m);
      double cdf = oracles::exact_cdf(f, (double)m);
      acc.observe(cdf - b.cdf_lower, {{"m", (double)m}, {"side", 0.0}});
      acc.observe(b.cdf_upper - cdf, {{"m", (double)m}, {"side", 1.0}});
    }
  } else {
    throw std::invalid_argument("check_intersection requires a discrete family");
  }
  GridSpec mg = GridSpec::linear("m", 0.0, (double)m_cap, (int)m_cap + 1);
  return finish(family_name(f) + "-intersection", {mg}, acc, tolerance);
}

CheckReport check_counterexample_negbin(double k, double theta, long m_max) {
  if (m_max < 0) throw std::domain_error("m_max must be nonnegative");
  Family nb = NegativeBinomial(k, theta);
  SlackMin acc;
  for (long m = 0; m <= m_max; m++) {
    double lower = oracles::exact_cdf(nb, (double)m - 1.0);
    double phi_g = bounds::negbin_gaussian_lower(k, theta, m);
    acc.observe(phi_g - lower, {{"k", k}, {"theta", theta}, {"m", (double)m}});
  }
  CheckReport r;
  r.check_id = "negbin-counterexample";
  r.grid = {GridSpec::explicit_set("k", {k}), GridSpec::explicit_set("theta", {theta}),
            GridSpec::linear("m", 0.0, (double)m_max, (int)m_max + 1)};
  r.points_evaluated = acc.points;
  r.min_slack = acc.min_slack;
  r.argmin_location = acc.argmin;
  r.tolerance = 1e-12;
  // A negative slack IS the sought counterexample, so finding one is a
  // pass. Not finding one fails only for the parameters where the
  // violation is known to exist.
  bool found = acc.min_slack < -1e-12;
  bool canonical = k == 1.0 && theta == 3.5;
  r.verdict = found ? "pass" : (canonical ? "fail" : "conjecture-holds-on-grid");
  return r;
}

CheckReport check_poisson_halfstep(const GridSpec& lambda_grid, double tolerance) {
  SlackMin acc;
  for (double lam : lambda_grid.points()) {
    long m_cap = default_m_cap(lam, lam);
    for (long m = 0; m <= m_cap; m++)
      acc.observe(bounds::poisson_halfstep_probe(lam, m),
                  {{"lambda", lam}, {"m", (double)m}});
  }
  CheckReport r = finish("poisson-halfstep", {lambda_grid}, acc, tolerance);
  if (r.verdict == "pass") r.verdict = "conjecture-holds-on-grid";
  return r;
}

std::vector<CheckReport> run_full_matrix(double tolerance) {
  std::vector<CheckReport> out;
  out.push_back(matrix_ig_gaussian(tolerance));
  out.push_back(matrix_ig_ig(tolerance));
  out.push_back(matrix_gamma_gaussian(tolerance));
  out.push_back(matrix_gamma_gamma(tolerance));
  out.push_back(matrix_geometric_exponential(tolerance, std::nullopt, std::nullopt));
  out.push_back(matrix_negbin_gamma(tolerance, std::nullopt, std::nullopt));
  out.push_back(matrix_binomial_gaussian(tolerance, std::nullopt));
  out.push_back(matrix_poisson_gaussian(tolerance, std::nullopt, std::nullopt));
  return out;
}

CheckReport run_check(const std::string& id, const CheckOptions& options) {
  double tol = options.tolerance;
  if (id == "ig-vs-gaussian") return matrix_ig_gaussian(tol);
  if (id == "ig-vs-ig") return matrix_ig_ig(tol);
  if (id == "gamma-vs-gaussian") return matrix_gamma_gaussian(tol);
  if (id == "gamma-vs-gamma") return matrix_gamma_gamma(tol);
  if (id == "geometric-exponential")
    return matrix_geometric_exponential(tol, options.theta_grid, options.m_max);
  if (id == "negbin-gamma")
    return matrix_negbin_gamma(tol, options.theta_grid, options.m_max);
  if (id == "binomial-gaussian")
    return matrix_binomial_gaussian(tol, options.m_max);
  if (id == "poisson-gaussian")
    return matrix_poisson_gaussian(tol, options.lambda_grid, options.m_max);
  if (id == "negbin-counterexample")
    return check_counterexample_negbin(1.0, 3.5, options.m_max ? *options.m_max : 50);
  if (id == "poisson-halfstep") {
    GridSpec lg = options.lambda_grid
                      ? *options.lambda_grid
                      : GridSpec::logarithmic("lambda", 0.1, 50.0, 25);
    return check_poisson_halfstep(lg, tol);
  }
  throw std::invalid_argument("unknown check id: " + id);
}

std::vector<std::string> known_check_ids() {
  return {"ig-vs-gaussian",     "ig-vs-ig",
          "gamma-vs-gaussian",  "gamma-vs-gamma",
          "geometric-exponential", "negbin-gamma",
          "binomial-gaussian",  "poisson-gaussian",
          "negbin-counterexample", "poisson-halfstep"};
}

bool is_conjecture_probe(const std::string& id) {
  return id == "negbin-counterexample" || id == "poisson-halfstep";
}

}  // namespace checkers
}  // namespace tailbound
