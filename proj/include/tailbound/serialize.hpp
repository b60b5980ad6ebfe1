#pragma once

// JSON and CSV emission for the report and series types, plus the
// parsers that make the JSON side a lossless round trip. CSV values
// are printed with 17 significant digits so a re-analysis sees the
// exact doubles the checks computed.

#include <string>
#include <vector>

#include "json.hpp"
#include "tailbound/bounds.hpp"
#include "tailbound/checkers.hpp"
#include "tailbound/qq.hpp"

namespace tailbound {
namespace serialize {

using json = nlohmann::json;

// Fixed 17-significant-digit decimal form, enough to reproduce any
// double exactly on parse. Used for the CSV emitters; JSON stores
// doubles natively and relies on nlohmann's shortest round-trip dump.
std::string format_real(double v);

json family_to_json(const Family& f);
Family family_from_json(const json& j);

json grid_to_json(const oracles::GridSpec& g);
oracles::GridSpec grid_from_json(const json& j);

json report_to_json(const checkers::CheckReport& r);
checkers::CheckReport report_from_json(const json& j);

json series_to_json(const qq::QQSeries& s);
qq::QQSeries series_from_json(const json& j);

json tail_bracket_to_json(const bounds::TailBracket& b);
bounds::TailBracket tail_bracket_from_json(const json& j);

json gamma_bracket_to_json(const bounds::GammaBracket& b);
bounds::GammaBracket gamma_bracket_from_json(const json& j);

std::string reports_to_csv(const std::vector<checkers::CheckReport>& reports);
std::string series_to_csv(const std::vector<qq::QQSeries>& series);

}  // namespace serialize
}  // namespace tailbound
