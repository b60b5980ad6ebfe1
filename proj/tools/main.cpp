// tailbound: certified Gaussian tail bounds for exponential families.
//
// Subcommands: bound, qq, check, divergence. Output formats: human
// table (default), csv (17 significant digits), json. Exit codes:
// 0 success, 1 theorem-check failure, 2 usage or domain error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailbound/bounds.hpp"
#include "tailbound/checkers.hpp"
#include "tailbound/families.hpp"
#include "tailbound/oracles.hpp"
#include "tailbound/qq.hpp"
#include "tailbound/serialize.hpp"

namespace {

using tailbound::Family;
using json = nlohmann::json;

// Table cells use 10 significant digits; csv uses format_real (17).
std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string family_label(const Family& f) {
  char buf[64];
  struct Label {
    char* buf;
    std::size_t cap;
    void operator()(const tailbound::InverseGaussian& g) const {
      std::snprintf(buf, cap, "ig(%g,%g)", g.mu, g.lambda);
    }
    void operator()(const tailbound::Exponential& g) const {
      std::snprintf(buf, cap, "exponential(%g)", g.theta);
    }
    void operator()(const tailbound::Gamma& g) const {
      std::snprintf(buf, cap, "gamma(%g,%g)", g.k, g.theta);
    }
    void operator()(const tailbound::Geometric& g) const {
      std::snprintf(buf, cap, "geometric(%g)", g.theta);
    }
    void operator()(const tailbound::NegativeBinomial& g) const {
      std::snprintf(buf, cap, "negbin(%g,%g)", g.k, g.theta);
    }
    void operator()(const tailbound::Binomial& g) const {
      std::snprintf(buf, cap, "binomial(%d,%g)", g.n, g.p);
    }
    void operator()(const tailbound::Poisson& g) const {
      std::snprintf(buf, cap, "poisson(%g)", g.lambda);
    }
  };
  std::visit(Label{buf, sizeof buf}, f);
  return buf;
}

// Flags shared by the family-taking subcommands. Every flag is
// optional at parse time; each family validates the subset it needs.
struct FamilyFlags {
  std::string family;
  std::optional<double> mu, lambda, theta, k, p, x, w, m;
  std::optional<int> n;

  void add_to(CLI::App* sub, bool with_point) {
    sub->add_option("--family", family, "ig | exponential | gamma | geometric | negbin | binomial | poisson");
    sub->add_option("--mu", mu, "ig mean");
    sub->add_option("--lambda", lambda, "ig shape / poisson mean");
    sub->add_option("--theta", theta, "exponential, gamma, geometric, negbin scale");
    sub->add_option("--k", k, "gamma/negbin shape; binomial/poisson point");
    sub->add_option("--n", n, "binomial trials");
    sub->add_option("--p", p, "binomial success probability");
    if (with_point) {
      sub->add_option("--x", x, "evaluation point (continuous families)");
      sub->add_option("--w", w, "alias of --x for the inverse Gaussian");
      sub->add_option("--m", m, "evaluation point (discrete families)");
    }
  }
};

double need(const std::optional<double>& v, const char* what) {
  if (!v) throw std::invalid_argument(std::string(what) + " is required");
  return *v;
}

Family make_family(const FamilyFlags& a) {
  using namespace tailbound;
  if (a.family == "ig")
    return InverseGaussian(need(a.mu, "--mu"), need(a.lambda, "--lambda"));
  if (a.family == "exponential") return Exponential(need(a.theta, "--theta"));
  if (a.family == "gamma")
    return Gamma(need(a.k, "--k"), need(a.theta, "--theta"));
  if (a.family == "geometric") return Geometric(need(a.theta, "--theta"));
  if (a.family == "negbin")
    return NegativeBinomial(need(a.k, "--k"), need(a.theta, "--theta"));
  if (a.family == "binomial") {
    if (!a.n) throw std::invalid_argument("--n is required");
    return Binomial(*a.n, need(a.p, "--p"));
  }
  if (a.family == "poisson") return Poisson(need(a.lambda, "--lambda"));
  if (a.family.empty()) throw std::invalid_argument("--family is required");
  throw std::invalid_argument("unknown family: " + a.family);
}

// The evaluation point: --x/--w for the continuous families, --m for
// the bounded-support discrete ones, --k or --m for binomial/poisson.
double bound_point(const FamilyFlags& a) {
  if (a.family == "ig") {
    if (a.x) return *a.x;
    return need(a.w, "--x (or --w)");
  }
  if (a.family == "exponential" || a.family == "gamma")
    return need(a.x, "--x");
  if (a.family == "binomial" || a.family == "poisson") {
    if (a.m) return *a.m;
    return need(a.k, "--k (or --m)");
  }
  return need(a.m, "--m");
}

void print_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& [key, value] : rows) w = std::max(w, key.size());
  for (const auto& [key, value] : rows)
    std::printf("%-*s  %s\n", (int)w, key.c_str(), value.c_str());
}

void print_csv_row(const std::vector<std::pair<std::string, double>>& cols) {
  std::string header, row;
  for (const auto& [name, value] : cols) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += name;
    row += tailbound::serialize::format_real(value);
  }
  std::printf("%s\n%s\n", header.c_str(), row.c_str());
}

int run_bound(const FamilyFlags& args, const std::string& format) {
  Family f = make_family(args);
  double point = bound_point(args);

  // Keyed columns in JSON (alphabetical) order; the table prepends
  // the family and point context rows.
  std::vector<std::pair<std::string, double>> cols;
  std::string point_key;
  if (args.family == "binomial" || args.family == "poisson") {
    tailbound::bounds::TailBracket b = tailbound::bounds::intersection_bracket(f, point);
    cols = {{"lower", b.lower}, {"mid", b.gaussian_value}, {"upper", b.upper}};
    point_key = "point";
    point = b.point;
  } else if (args.family == "geometric" || args.family == "negbin") {
    double shape = args.family == "geometric" ? 1.0 : *args.k;
    double r = std::nearbyint(point);
    if (std::fabs(point - r) > 1e-9 || r < 0.0)
      throw std::domain_error("m must be a nonnegative integer");
    tailbound::bounds::GammaBracket b =
        tailbound::bounds::negbin_gamma_bracket(shape, *args.theta, (long)r);
    cols = {{"cdf_lower", b.cdf_lower},
            {"cdf_upper", b.cdf_upper},
            {"exact", tailbound::oracles::exact_cdf(f, r)},
            {"x_m", b.x_m},
            {"x_m_plus_1", b.x_m_plus_1}};
    point_key = "m";
    point = r;
  } else {
    cols = {{"exact", tailbound::oracles::exact_cdf(f, point)},
            {"lower", tailbound::bounds::gaussian_lower_bound(f, point)},
            {"x", point}};
    point_key = "x";
  }

  if (format == "json") {
    json j;
    for (const auto& [name, value] : cols) j[name] = value;
    std::printf("%s\n", j.dump().c_str());
  } else if (format == "csv") {
    print_csv_row(cols);
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("family", family_label(f));
    rows.emplace_back(point_key, cell(point));
    for (const auto& [name, value] : cols)
      if (name != "x") rows.emplace_back(name, cell(value));
    print_table(rows);
  }
  return 0;
}

int run_qq(const FamilyFlags& args, const std::string& preset, int quantiles,
           const std::string& format) {
  std::vector<tailbound::qq::QQSeries> series;
  if (!preset.empty()) {
    if (!args.family.empty())
      throw std::invalid_argument("--preset and --family are mutually exclusive");
    series = tailbound::qq::preset_series(preset, quantiles);
  } else {
    series.push_back(tailbound::qq::make_series(make_family(args), quantiles));
  }

  if (format == "json") {
    json j = json::array();
    for (const auto& s : series) j.push_back(tailbound::serialize::series_to_json(s));
    std::printf("%s\n", j.dump().c_str());
  } else if (format == "csv") {
    std::fputs(tailbound::serialize::series_to_csv(series).c_str(), stdout);
  } else {
    for (const auto& s : series) {
      bool steps = !s.rows.empty() && s.rows.front().has_step;
      std::printf("series %s [%s]\n", s.label.c_str(), s.family.c_str());
      std::printf("%-16s %-18s %-18s", "prob", "gaussian_quantile", "signed_ll_quantile");
      if (steps) std::printf(" %-16s %-16s", "step_left", "step_right");
      std::printf("\n");
      for (const auto& r : s.rows) {
        std::printf("%-16s %-18s %-18s", cell(r.prob).c_str(),
                    cell(r.gaussian_quantile).c_str(),
                    cell(r.signed_ll_quantile).c_str());
        if (r.has_step)
          std::printf(" %-16s %-16s", cell(r.step_left).c_str(),
                      cell(r.step_right).c_str());
        std::printf("\n");
      }
    }
  }
  return 0;
}

double resolve_tolerance(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag >= 0.0) || !std::isfinite(*flag))
      throw std::invalid_argument("--tolerance must be a nonnegative real");
    return *flag;
  }
  const char* env = std::getenv("TAILBOUND_TOLERANCE");
  if (!env || !*env) return tailbound::checkers::default_tolerance;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("TAILBOUND_TOLERANCE must be a nonnegative real");
  return v;
}

tailbound::oracles::GridSpec parse_log_grid(const std::string& flag,
                                            const std::string& text,
                                            const std::string& name) {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &tail) != 3 ||
      !(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument(flag + " must be lo:hi:count with 0 < lo < hi and count >= 2");
  return tailbound::oracles::GridSpec::logarithmic(name, lo, hi, count);
}

int run_check(const std::optional<std::string>& id,
              const std::optional<double>& tolerance_flag,
              const std::string& lambda_grid, const std::string& theta_grid,
              const std::optional<long>& m_max, const std::string& format) {
  tailbound::checkers::CheckOptions options;
  options.tolerance = resolve_tolerance(tolerance_flag);
  if (!lambda_grid.empty())
    options.lambda_grid = parse_log_grid("--lambda-grid", lambda_grid, "lambda");
  if (!theta_grid.empty())
    options.theta_grid = parse_log_grid("--theta-grid", theta_grid, "theta");
  options.m_max = m_max;

  std::vector<tailbound::checkers::CheckReport> reports;
  if (id) {
    reports.push_back(tailbound::checkers::run_check(*id, options));
  } else {
    for (const auto& known : tailbound::checkers::known_check_ids())
      if (!tailbound::checkers::is_conjecture_probe(known))
        reports.push_back(tailbound::checkers::run_check(known, options));
  }

  int failed = 0;
  for (const auto& r : reports)
    if (r.verdict == "fail" && !tailbound::checkers::is_conjecture_probe(r.check_id))
      ++failed;

  if (format == "json") {
    json j = json::array();
    for (const auto& r : reports) j.push_back(tailbound::serialize::report_to_json(r));
    std::printf("%s\n", j.dump().c_str());
  } else if (format == "csv") {
    std::fputs(tailbound::serialize::reports_to_csv(reports).c_str(), stdout);
  } else {
    for (const auto& r : reports) {
      std::printf("%-24s points %8ld  min_slack %13s  %s%s\n", r.check_id.c_str(),
                  r.points_evaluated, cell(r.min_slack).c_str(), r.verdict.c_str(),
                  tailbound::checkers::is_conjecture_probe(r.check_id)
                      ? " (probe, non-gating)"
                      : "");
      if (r.verdict == "fail") {
        std::string where;
        for (const auto& [name, value] : r.argmin_location) {
          if (!where.empty()) where += ' ';
          where += name + "=" + cell(value);
        }
        std::printf("%-24s   worst point: %s\n", "", where.c_str());
      }
    }
    std::printf("%zu/%zu checks passed\n", reports.size() - failed, reports.size());
  }
  return failed > 0 ? 1 : 0;
}

int run_divergence(const FamilyFlags& args, const std::optional<double>& mu1_opt,
                   const std::optional<double>& mu2_opt, const std::string& format) {
  using namespace tailbound;
  double mu1 = need(mu1_opt, "--mu1");
  double mu2 = need(mu2_opt, "--mu2");

  // The base member carries the structural parameters (shape, size,
  // ig lambda); its own mean is irrelevant to D(mu1 || mu2), so the
  // mean-like parameter is set from mu2.
  Family f = [&]() -> Family {
    if (args.family == "ig")
      return InverseGaussian(need(args.mu, "--mu"), need(args.lambda, "--lambda"));
    if (args.family == "exponential") return Exponential(mu2);
    if (args.family == "gamma") return Gamma(need(args.k, "--k"), mu2 / need(args.k, "--k"));
    if (args.family == "geometric") return Geometric(mu2);
    if (args.family == "negbin")
      return NegativeBinomial(need(args.k, "--k"), mu2 / need(args.k, "--k"));
    if (args.family == "binomial") {
      if (!args.n) throw std::invalid_argument("--n is required");
      return Binomial(*args.n, mu2 / *args.n);
    }
    if (args.family == "poisson") return Poisson(mu2);
    if (args.family.empty()) throw std::invalid_argument("--family is required");
    throw std::invalid_argument("unknown family: " + args.family);
  }();

  double closed = divergence(f, mu1, mu2);
  double numeric = oracles::numeric_divergence(f, mu1, mu2);
  double diff = std::fabs(closed - numeric);

  if (format == "json") {
    json j;
    j["abs_diff"] = diff;
    j["closed"] = closed;
    j["numeric"] = numeric;
    std::printf("%s\n", j.dump().c_str());
  } else if (format == "csv") {
    print_csv_row({{"closed", closed}, {"numeric", numeric}, {"abs_diff", diff}});
  } else {
    print_table({{"family", family_label(f)},
                 {"mu1", cell(mu1)},
                 {"mu2", cell(mu2)},
                 {"closed", cell(closed)},
                 {"numeric", cell(numeric)},
                 {"abs_diff", cell(diff)}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed log-likelihood tail bounds for exponential families"};
  app.require_subcommand(1);

  std::string bound_format = "table", qq_format = "table";
  std::string check_format = "table", div_format = "table";
  auto format_check = CLI::IsMember({"table", "csv", "json"});

  FamilyFlags bound_args;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "certified tail bound and exact CDF at a point");
  bound_args.add_to(bound_cmd, true);
  bound_cmd->add_option("--format", bound_format)->check(format_check);

  FamilyFlags qq_args;
  std::string qq_preset;
  int qq_quantiles = 999;
  CLI::App* qq_cmd =
      app.add_subcommand("qq", "Gaussian vs signed log-likelihood quantile series");
  qq_args.add_to(qq_cmd, false);
  qq_cmd->add_option("--preset", qq_preset,
                     "ig-1-1 | exp-geo-3.5 | bin-7-0.5 | po-3.5 | neg-1-3.5");
  qq_cmd->add_option("--quantiles", qq_quantiles, "number of interior quantiles")
      ->check(CLI::PositiveNumber);
  qq_cmd->add_option("--format", qq_format)->check(format_check);

  std::optional<std::string> check_id;
  std::optional<double> check_tolerance;
  std::string check_lambda_grid, check_theta_grid;
  std::optional<long> check_m_max;
  CLI::App* check_cmd =
      app.add_subcommand("check", "verify the domination and intersection theorems");
  check_cmd->add_option("--id", check_id, "run a single check by id");
  check_cmd->add_option("--tolerance", check_tolerance,
                        "slack tolerance (default 1e-9, or TAILBOUND_TOLERANCE)");
  check_cmd->add_option("--lambda-grid", check_lambda_grid, "lo:hi:count, log-spaced");
  check_cmd->add_option("--theta-grid", check_theta_grid, "lo:hi:count, log-spaced");
  check_cmd->add_option("--m-max", check_m_max, "largest support point to sweep");
  check_cmd->add_option("--format", check_format)->check(format_check);

  FamilyFlags div_args;
  std::optional<double> div_mu1, div_mu2;
  CLI::App* div_cmd = app.add_subcommand(
      "divergence", "closed-form vs quadrature information divergence");
  div_args.add_to(div_cmd, false);
  div_cmd->add_option("--mu1", div_mu1, "mean of the left argument");
  div_cmd->add_option("--mu2", div_mu2, "mean of the right argument");
  div_cmd->add_option("--format", div_format)->check(format_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (bound_cmd->parsed()) return run_bound(bound_args, bound_format);
    if (qq_cmd->parsed())
      return run_qq(qq_args, qq_preset, qq_quantiles, qq_format);
    if (check_cmd->parsed())
      return run_check(check_id, check_tolerance, check_lambda_grid,
                       check_theta_grid, check_m_max, check_format);
    if (div_cmd->parsed())
      return run_divergence(div_args, div_mu1, div_mu2, div_format);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
