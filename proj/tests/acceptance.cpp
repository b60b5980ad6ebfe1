// Acceptance gate: one line per numbered criterion, [PASS] or [FAIL],
// exit 1 if any gating criterion fails. The half-step probe (10) is
// informational and never gates.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tailbound/bounds.hpp"
#include "tailbound/checkers.hpp"
#include "tailbound/families.hpp"
#include "tailbound/oracles.hpp"

namespace {

using namespace tailbound;

int failures = 0;

void report(int idx, const char* label, bool ok, const std::string& detail,
            bool gating = true) {
  if (!ok && gating) failures++;
  std::printf("[%s] %2d. %-34s %s%s\n", ok ? "PASS" : "FAIL", idx, label,
              detail.c_str(), gating ? "" : " (non-gating)");
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// 1. The phi(G)-form densities must match the textbook densities to
// 1e-12 relative on wide log grids.
void criterion_saddlepoint() {
  std::vector<Family> cases;
  cases.push_back(InverseGaussian(1, 1));
  for (double th : {0.5, 1.0, 3.5}) cases.push_back(Exponential(th));
  for (double k : {0.5, 1.0, 2.0, 5.0, 20.0})
    for (double th : {0.5, 1.0, 3.0}) cases.push_back(Gamma(k, th));

  double worst = 0.0;
  for (const Family& f : cases) {
    double mu = mean(f);
    oracles::GridSpec grid =
        oracles::GridSpec::logarithmic("x", 0.01 * mu, 20.0 * mu, 200);
    for (double x : grid.points()) {
      double exact = oracles::exact_pdf(f, x);
      double rel = std::fabs(saddlepoint_density(f, x) - exact) / exact;
      worst = std::max(worst, rel);
    }
  }
  report(1, "saddle-point density exactness",
         worst <= 1e-12, fmt("max rel err %.3g", worst));
}

// 2. Closed-form divergences against adaptive quadrature, 50 random
// mean pairs per family.
void criterion_divergence() {
  std::mt19937 rng(20240901);
  auto log_uniform = [&](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };

  struct Case {
    Family f;
    double lo, hi;
  };
  const Case cases[] = {
      {InverseGaussian(1.5, 0.8), 0.05, 12.0},
      {Exponential(1), 0.05, 12.0},
      {Gamma(2.5, 1), 0.05, 12.0},
      {Geometric(1), 0.05, 10.0},
      {NegativeBinomial(2.5, 1), 0.05, 10.0},
      {Binomial(13, 0.5), 0.2, 12.8},
      {Poisson(1), 0.05, 25.0},
  };

  double worst = 0.0;
  for (const Case& c : cases) {
    for (int i = 0; i < 50; i++) {
      double mu1 = log_uniform(c.lo, c.hi);
      double mu2 = log_uniform(c.lo, c.hi);
      double diff = std::fabs(divergence(c.f, mu1, mu2) -
                              oracles::numeric_divergence(c.f, mu1, mu2));
      worst = std::max(worst, diff);
    }
  }
  report(2, "divergence closed form vs quadrature",
         worst <= 1e-8, fmt("max abs diff %.3g", worst));
}

void criterion_matrix(int idx, const char* label,
                      const std::vector<std::string>& ids) {
  double min_slack = HUGE_VAL;
  bool ok = true;
  for (const std::string& id : ids) {
    checkers::CheckReport r = checkers::run_check(id, checkers::CheckOptions{});
    min_slack = std::min(min_slack, r.min_slack);
    ok = ok && r.verdict == "pass";
  }
  ok = ok && min_slack >= -1e-9;
  report(idx, label, ok, fmt("min slack %.3g", min_slack));
}

// 5. Reference-figure brackets, golden values frozen from the
// summation oracle ahead of the build.
void criterion_goldens() {
  bounds::TailBracket bin = bounds::intersection_bracket(Binomial(7, 0.5), 5);
  bounds::TailBracket po = bounds::intersection_bracket(Poisson(3.5), 5);
  double worst = 0.0;
  auto track = [&](double got, double want) {
    worst = std::max(worst, std::fabs(got - want));
  };
  track(bin.lower, 0.7734375);
  track(bin.gaussian_value, 0.87544484103864414831);
  track(bin.upper, 0.9375);
  track(po.lower, 0.72544495330960460762);
  track(po.gaussian_value, 0.77422324924193819838);
  track(po.upper, 0.85761355309577831645);
  report(5, "figure-parameter golden brackets",
         worst <= 1e-6, fmt("max abs err %.3g", worst));
}

// 6. The negative binomial counterexample: neg(1, 3.5) violates the
// conjectured Gaussian upper bound somewhere below m = 50.
void criterion_counterexample() {
  checkers::CheckReport r = checkers::check_counterexample_negbin(1.0, 3.5, 50);
  bool found = r.min_slack < -1e-12;
  double at = -1.0;
  for (const auto& [name, value] : r.argmin_location)
    if (name == "m") at = value;
  report(6, "negbin counterexample reproduction",
         found && r.verdict == "pass",
         fmt("violation %.3g at m=%.0f", -r.min_slack, at));
}

// 7. Derivative identities: finite differences converge at O(h^2) to
// the shape-incremented density/pmf forms.
void criterion_derivatives() {
  const struct {
    Family f;
    double point;
  } cases[] = {
      {Poisson(3.5), 4},
      {Gamma(2, 1), 3},
      {NegativeBinomial(2, 1.75), 3},
  };
  bool ok = true;
  double worst_res = 0.0, worst_ratio = HUGE_VAL;
  for (const auto& c : cases) {
    double res_h = oracles::derivative_lemma_residual(c.f, c.point, 1e-4);
    double res_2h = oracles::derivative_lemma_residual(c.f, c.point, 2e-4);
    double ratio = res_2h / res_h;
    worst_res = std::max(worst_res, res_h);
    worst_ratio = std::min(worst_ratio, ratio);
    ok = ok && res_h <= 1e-7 && ratio >= 3.8;
  }
  report(7, "derivative lemmas",
         ok, fmt("max residual %.3g, min ratio %.3g", worst_res, worst_ratio));
}

// 8. Analytic signed-ll densities against the change-of-variables
// finite difference, 50 z points per continuous family.
void criterion_signed_ll_density() {
  const Family cases[] = {InverseGaussian(1, 1), Exponential(3.5), Gamma(5, 0.7)};
  double worst = 0.0;
  for (const Family& f : cases) {
    for (int i = 0; i < 25; i++) {
      double zmag = 0.05 + i * (4.0 - 0.05) / 24.0;
      for (double z : {zmag, -zmag}) {
        double analytic = signed_ll_density(f, z);
        double numeric = oracles::numeric_signed_ll_density(f, z, 1e-5);
        worst = std::max(worst, std::fabs(analytic - numeric) / analytic);
      }
    }
  }
  report(8, "signed-ll density vs finite diff",
         worst <= 1e-6, fmt("max rel err %.3g", worst));
}

// 9. Binomial/Poisson comparison: the Poisson matched on the signed
// log-likelihood at k has its strict tail inside the binomial bracket.
void criterion_binomial_poisson() {
  std::mt19937 rng(8675309);
  std::uniform_int_distribution<int> draw_n(1, 40);
  std::uniform_real_distribution<double> draw_p(0.05, 0.95);

  double min_slack = HUGE_VAL;
  for (int i = 0; i < 100; i++) {
    int n = draw_n(rng);
    double p = draw_p(rng);
    std::uniform_int_distribution<int> draw_k(0, n);
    int k = draw_k(rng);

    Family bin = Binomial(n, p);
    Family po = Poisson(bounds::matched_poisson_lambda(n, p, k));
    double strict_po = oracles::exact_cdf(po, k - 1.0);
    min_slack = std::min(min_slack, strict_po - oracles::exact_cdf(bin, k - 1.0));
    min_slack = std::min(min_slack, oracles::exact_cdf(bin, k) - strict_po);
  }
  report(9, "binomial vs matched poisson bracket",
         min_slack >= -1e-9, fmt("min slack %.3g", min_slack));
}

// 10. Half-step conjecture probe, reported but never asserted.
void criterion_halfstep_probe() {
  checkers::CheckReport r =
      checkers::run_check("poisson-halfstep", checkers::CheckOptions{});
  report(10, "poisson half-step probe",
         r.verdict == "conjecture-holds-on-grid",
         fmt("min slack %.3g", r.min_slack), false);
}

}  // namespace

int main() {
  criterion_saddlepoint();
  criterion_divergence();
  criterion_matrix(3, "domination suite",
                   {"ig-vs-gaussian", "ig-vs-ig", "gamma-vs-gaussian",
                    "gamma-vs-gamma"});
  criterion_matrix(4, "intersection suite",
                   {"geometric-exponential", "negbin-gamma", "binomial-gaussian",
                    "poisson-gaussian"});
  criterion_goldens();
  criterion_counterexample();
  criterion_derivatives();
  criterion_signed_ll_density();
  criterion_binomial_poisson();
  criterion_halfstep_probe();

  if (failures > 0) {
    std::printf("%d gating criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all gating criteria passed\n");
  return 0;
}
