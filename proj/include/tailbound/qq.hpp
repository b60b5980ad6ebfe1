#pragma once

// Quantile-quantile series: the data behind the classic plots of
// standard Gaussian quantiles against quantiles of a signed
// log-likelihood. Continuous families produce a smooth curve sampled
// at a probability grid; discrete families produce a staircase with
// explicit step endpoints, each step crossed by the diagonal exactly
// when the intersection theorems hold.

#include <string>
#include <vector>

#include "tailbound/families.hpp"

namespace tailbound {
namespace qq {

struct QQRow {
  double prob = 0.0;
  double gaussian_quantile = 0.0;
  double signed_ll_quantile = 0.0;
  // Staircase endpoints, present for discrete families only: the step
  // at height signed_ll_quantile runs from step_left to step_right on
  // the Gaussian axis, with the endpoint probabilities clamped to
  // [1e-12, 1-1e-12] before applying the Gaussian quantile.
  bool has_step = false;
  double step_left = 0.0;
  double step_right = 0.0;
};

struct QQSeries {
  std::string label;
  std::string family;
  std::vector<QQRow> rows;
};

// Inverse CDF of a continuous family by monotone bisection on the
// exact CDF oracle.
double cdf_quantile(const Family& f, double q);

// Continuous: rows (Phi^-1(q), G(F^-1(q)), q) over q = i/(quantiles+1).
// Discrete: one row per staircase step m with prob = Pr(M <= m),
// stopping once the upper tail is exhausted; `quantiles` is ignored.
QQSeries make_series(const Family& f, int quantiles);

// Named parameter sets from the reference figures. A preset may expand
// to more than one series (a staircase plus its continuous companion).
std::vector<QQSeries> preset_series(const std::string& preset, int quantiles);

std::vector<std::string> known_presets();

}  // namespace qq
}  // namespace tailbound
