#pragma once

// Grid-sweep verification of every inequality the library certifies:
// the four stochastic-domination results and the four intersection
// results, plus the counterexample scan and the half-step conjecture
// probe. Each check reports its worst-case slack and where it occurred.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailbound/families.hpp"
#include "tailbound/oracles.hpp"

namespace tailbound {
namespace checkers {

using oracles::GridSpec;

inline constexpr double default_tolerance = 1e-9;

struct CheckReport {
  std::string check_id;
  std::vector<GridSpec> grid;
  long points_evaluated = 0;
  double min_slack = 0.0;
  std::vector<std::pair<std::string, double>> argmin_location;
  std::string verdict;  // "pass" | "fail" | "conjecture-holds-on-grid"
  double tolerance = default_tolerance;
};

// Default z grid for Gaussian-reference sweeps: [-6, 6], 2001 points.
GridSpec default_z_grid();

// CDF-level domination check of the signed log-likelihood of
// `dominated` against the reference (standard Gaussian when absent).
// slack(z) = Pr(G_dom <= z) - Pr(G_ref <= z), which the theorems make
// nonnegative. Family-vs-family comparisons are oriented by the
// theorem's own predicate (shape order for Gamma, mu/lambda ratio for
// IG) regardless of argument order; the _directed variant takes the
// argument order literally and is what the fault-injection tests use.
CheckReport check_domination(const Family& dominated,
                             const std::optional<Family>& reference,
                             const GridSpec& z_grid, double tolerance);
CheckReport check_domination_directed(const Family& dominated,
                                      const std::optional<Family>& reference,
                                      const GridSpec& z_grid, double tolerance);

// The proof device behind the domination results: the log of the
// density ratio f_ref(z) / f_dom(z) must be nondecreasing in z. The
// slack is the smallest consecutive increment over the grid.
CheckReport check_density_ratio(const Family& dominated,
                                const std::optional<Family>& reference,
                                const GridSpec& z_grid, double tolerance);

// Intersection check for one family: Binomial/Poisson against the
// Gaussian bracket, Geometric/NegativeBinomial against the Gamma
// bracket. m_max <= 0 means "mean + 10 sd".
CheckReport check_intersection(const Family& f, long m_max, double tolerance);

// Scan m = 0..m_max for a violation of Pr(M < m) <= Phi(G_neg(m)).
// The verdict is pass when a violation of more than 1e-12 is found;
// for the paper parameters (k=1, theta=3.5) no violation means fail,
// for other parameters it means conjecture-holds-on-grid.
CheckReport check_counterexample_negbin(double k, double theta, long m_max);

// Half-step conjecture probe over a lambda grid.
CheckReport check_poisson_halfstep(const GridSpec& lambda_grid, double tolerance);

struct CheckOptions {
  double tolerance = default_tolerance;
  std::optional<GridSpec> lambda_grid;
  std::optional<GridSpec> theta_grid;
  std::optional<long> m_max;
};

// One check per row of the two summary tables, with stable ids:
//   ig-vs-gaussian, ig-vs-ig, gamma-vs-gaussian, gamma-vs-gamma,
//   geometric-exponential, negbin-gamma, binomial-gaussian,
//   poisson-gaussian.
std::vector<CheckReport> run_full_matrix(double tolerance = default_tolerance);

// Runs a single check by id: any matrix row id, or the probes
// negbin-counterexample / poisson-halfstep. Unknown ids throw
// std::invalid_argument.
CheckReport run_check(const std::string& id, const CheckOptions& options);

// All valid ids accepted by run_check, matrix rows first.
std::vector<std::string> known_check_ids();

// True for the two probe ids, whose outcome never gates an exit status.
bool is_conjecture_probe(const std::string& id);

}  // namespace checkers
}  // namespace tailbound
