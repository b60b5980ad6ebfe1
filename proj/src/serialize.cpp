#include "tailbound/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace tailbound {
namespace serialize {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json family_to_json(const Family& f) {
  json j;
  j["family"] = family_name(f);
  struct Params {
    json& j;
    void operator()(const InverseGaussian& g) const {
      j["mu"] = g.mu;
      j["lambda"] = g.lambda;
    }
    void operator()(const Exponential& g) const { j["theta"] = g.theta; }
    void operator()(const Gamma& g) const {
      j["k"] = g.k;
      j["theta"] = g.theta;
    }
    void operator()(const Geometric& g) const { j["theta"] = g.theta; }
    void operator()(const NegativeBinomial& g) const {
      j["k"] = g.k;
      j["theta"] = g.theta;
    }
    void operator()(const Binomial& g) const {
      j["n"] = g.n;
      j["p"] = g.p;
    }
    void operator()(const Poisson& g) const { j["lambda"] = g.lambda; }
  };
  std::visit(Params{j}, f);
  return j;
}

Family family_from_json(const json& j) {
  std::string name = j.at("family").get<std::string>();
  if (name == "ig")
    return InverseGaussian(j.at("mu").get<double>(), j.at("lambda").get<double>());
  if (name == "exponential") return Exponential(j.at("theta").get<double>());
  if (name == "gamma")
    return Gamma(j.at("k").get<double>(), j.at("theta").get<double>());
  if (name == "geometric") return Geometric(j.at("theta").get<double>());
  if (name == "negbin")
    return NegativeBinomial(j.at("k").get<double>(), j.at("theta").get<double>());
  if (name == "binomial")
    return Binomial(j.at("n").get<int>(), j.at("p").get<double>());
  if (name == "poisson") return Poisson(j.at("lambda").get<double>());
  throw std::invalid_argument("unknown family: " + name);
}

static std::string spacing_name(oracles::GridSpacing s) {
  switch (s) {
    case oracles::GridSpacing::Linear: return "linear";
    case oracles::GridSpacing::Log: return "log";
    case oracles::GridSpacing::Explicit: return "explicit";
  }
  return "linear";
}

static oracles::GridSpacing spacing_from_name(const std::string& s) {
  if (s == "linear") return oracles::GridSpacing::Linear;
  if (s == "log") return oracles::GridSpacing::Log;
  if (s == "explicit") return oracles::GridSpacing::Explicit;
  throw std::invalid_argument("unknown grid spacing: " + s);
}

json grid_to_json(const oracles::GridSpec& g) {
  json j;
  j["name"] = g.name;
  j["lo"] = g.lo;
  j["hi"] = g.hi;
  j["count"] = g.count;
  j["spacing"] = spacing_name(g.spacing);
  if (g.spacing == oracles::GridSpacing::Explicit) j["points"] = g.explicit_points;
  return j;
}

oracles::GridSpec grid_from_json(const json& j) {
  oracles::GridSpec g;
  g.name = j.at("name").get<std::string>();
  g.lo = j.at("lo").get<double>();
  g.hi = j.at("hi").get<double>();
  g.count = j.at("count").get<int>();
  g.spacing = spacing_from_name(j.at("spacing").get<std::string>());
  if (j.contains("points"))
    g.explicit_points = j.at("points").get<std::vector<double>>();
  return g;
}

json report_to_json(const checkers::CheckReport& r) {
  json j;
  j["check_id"] = r.check_id;
  j["grid"] = json::array();
  for (const auto& g : r.grid) j["grid"].push_back(grid_to_json(g));
  j["points_evaluated"] = r.points_evaluated;
  j["min_slack"] = r.min_slack;
  j["argmin_location"] = json::array();
  for (const auto& [name, value] : r.argmin_location)
    j["argmin_location"].push_back({{"name", name}, {"value", value}});
  j["verdict"] = r.verdict;
  j["tolerance"] = r.tolerance;
  return j;
}

checkers::CheckReport report_from_json(const json& j) {
  checkers::CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  for (const auto& g : j.at("grid")) r.grid.push_back(grid_from_json(g));
  r.points_evaluated = j.at("points_evaluated").get<long>();
  r.min_slack = j.at("min_slack").get<double>();
  for (const auto& a : j.at("argmin_location"))
    r.argmin_location.emplace_back(a.at("name").get<std::string>(),
                                   a.at("value").get<double>());
  r.verdict = j.at("verdict").get<std::string>();
  r.tolerance = j.at("tolerance").get<double>();
  return r;
}

json series_to_json(const qq::QQSeries& s) {
  json j;
  j["label"] = s.label;
  j["family"] = s.family;
  j["rows"] = json::array();
  for (const auto& row : s.rows) {
    json r;
    r["prob"] = row.prob;
    r["gaussian_quantile"] = row.gaussian_quantile;
    r["signed_ll_quantile"] = row.signed_ll_quantile;
    if (row.has_step) {
      r["step_left"] = row.step_left;
      r["step_right"] = row.step_right;
    }
    j["rows"].push_back(std::move(r));
  }
  return j;
}

qq::QQSeries series_from_json(const json& j) {
  qq::QQSeries s;
  s.label = j.at("label").get<std::string>();
  s.family = j.at("family").get<std::string>();
  for (const auto& r : j.at("rows")) {
    qq::QQRow row;
    row.prob = r.at("prob").get<double>();
    row.gaussian_quantile = r.at("gaussian_quantile").get<double>();
    row.signed_ll_quantile = r.at("signed_ll_quantile").get<double>();
    if (r.contains("step_left")) {
      row.has_step = true;
      row.step_left = r.at("step_left").get<double>();
      row.step_right = r.at("step_right").get<double>();
    }
    s.rows.push_back(row);
  }
  return s;
}

json tail_bracket_to_json(const bounds::TailBracket& b) {
  json j = family_to_json(b.family);
  j["lower"] = b.lower;
  j["mid"] = b.gaussian_value;
  j["upper"] = b.upper;
  j["point"] = b.point;
  return j;
}

bounds::TailBracket tail_bracket_from_json(const json& j) {
  return bounds::TailBracket{j.at("lower").get<double>(),
                             j.at("mid").get<double>(),
                             j.at("upper").get<double>(), family_from_json(j),
                             j.at("point").get<double>()};
}

json gamma_bracket_to_json(const bounds::GammaBracket& b) {
  json j;
  j["x_m"] = b.x_m;
  j["x_m_plus_1"] = b.x_m_plus_1;
  j["cdf_lower"] = b.cdf_lower;
  j["cdf_upper"] = b.cdf_upper;
  return j;
}

bounds::GammaBracket gamma_bracket_from_json(const json& j) {
  bounds::GammaBracket b;
  b.x_m = j.at("x_m").get<double>();
  b.x_m_plus_1 = j.at("x_m_plus_1").get<double>();
  b.cdf_lower = j.at("cdf_lower").get<double>();
  b.cdf_upper = j.at("cdf_upper").get<double>();
  return b;
}

static std::string csv_escape_argmin(const checkers::CheckReport& r) {
  std::string out;
  for (const auto& [name, value] : r.argmin_location) {
    if (!out.empty()) out += ';';
    out += name + "=" + format_real(value);
  }
  return out;
}

std::string reports_to_csv(const std::vector<checkers::CheckReport>& reports) {
  std::string out = "check_id,points_evaluated,min_slack,verdict,tolerance,argmin\n";
  for (const auto& r : reports) {
    out += r.check_id + "," + std::to_string(r.points_evaluated) + "," +
           format_real(r.min_slack) + "," + r.verdict + "," +
           format_real(r.tolerance) + "," + csv_escape_argmin(r) + "\n";
  }
  return out;
}

std::string series_to_csv(const std::vector<qq::QQSeries>& series) {
  std::string out =
      "series,family,prob,gaussian_quantile,signed_ll_quantile,step_left,step_right\n";
  for (const auto& s : series) {
    for (const auto& row : s.rows) {
      out += s.label + "," + s.family + "," + format_real(row.prob) + "," +
             format_real(row.gaussian_quantile) + "," +
             format_real(row.signed_ll_quantile) + ",";
      if (row.has_step)
        out += format_real(row.step_left) + "," + format_real(row.step_right);
      else
        out += ",";
      out += "\n";
    }
  }
  return out;
}

}  // namespace serialize
}  // namespace tailbound
