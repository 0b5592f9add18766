#ifndef DWC_CLI_REPORT_HPP
#define DWC_CLI_REPORT_HPP

// JSON and TSV emission. Every number is written as an exact rational string.

#include "dwc/acceptance.hpp"
#include "dwc/cli/config.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace dwc::cli {

using Json = nlohmann::ordered_json;

inline Json to_json(const SymForm& f, std::optional<Rational> p_plus = std::nullopt) {
  Json coeffs = Json::object();
  for (const auto& [k, a] : f.coeffs) coeffs[std::to_string(k)] = p_plus ? a.eval(*p_plus).str() : a.str();
  Json j{{"basis", to_string(f.basis)}, {"m", f.m}, {"d", f.meta.d}, {"l", f.meta.l}, {"r", f.meta.r},
         {"obstruction", f.meta.obstruction}, {"coeffs", coeffs}};
  if (p_plus) j["p_plus"] = p_plus->str();
  return j;
}

inline Json to_json(const ErratumReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"location", e.location},
                       {"slot", e.slot},
                       {"monomial", e.monomial},
                       {"paper", e.paper.str()},
                       {"derived", e.derived.str()},
                       {"corroboration", e.corroboration}});
  return entries;
}

inline Json to_json(const WallDatum& w) {
  return {{"alpha", w.alpha},        {"r", w.r},
          {"alpha_sq", w.alpha_sq},  {"epsilon", w.epsilon},
          {"supported", w.supported}, {"alpha_dot_omega_minus", w.dot_minus.str()},
          {"alpha_dot_omega_plus", w.dot_plus.str()}};
}

inline Json walls_json(const std::vector<WallDatum>& walls) {
  Json arr = Json::array();
  for (const auto& w : walls) arr.push_back(to_json(w));
  return {{"walls", arr}};
}

inline Json crossing_json(const CrossingReport& rep, const RunConfig& cfg, const ErratumReport* errata) {
  Json walls = Json::array();
  for (const auto& wc : rep.walls) {
    Json w = to_json(wc.wall);
    w["delta"] = wc.delta ? to_json(*wc.delta) : Json(nullptr);
    w["value"] = wc.value.str();
    walls.push_back(w);
  }
  Json warnings = rep.warnings;
  return {{"walls", walls},
          {"total", rep.total.str()},
          {"warnings", warnings},
          {"errata", errata ? to_json(*errata) : Json::array()},
          {"options",
           {{"convention", to_string(cfg.options.convention)},
            {"epsilon_rule", to_string(cfg.options.epsilon_rule)},
            {"r_max", cfg.options.r_max},
            {"source", cfg.options.source == DeltaSource::paper ? "paper" : "derived"},
            {"kr_sign", to_string(cfg.options.adhm.kr_sign)},
            {"kl_sign", to_string(cfg.options.adhm.kl_sign)},
            {"cap_relation", to_string(cfg.options.adhm.cap_relation)},
            {"p_plus", std::to_string(cfg.problem.M.p_plus())}}}};
}

inline std::string walls_tsv(const std::vector<WallDatum>& walls) {
  std::ostringstream os;
  os << "alpha\tr\talpha_sq\tepsilon\tsupported\n";
  for (const auto& w : walls)
    os << to_string(w.alpha) << '\t' << w.r << '\t' << w.alpha_sq << '\t' << w.epsilon << '\t'
       << (w.supported ? "yes" : "no") << '\n';
  return os.str();
}

inline std::string crossing_tsv(const CrossingReport& rep, const ErratumReport* errata) {
  std::ostringstream os;
  os << "alpha\tr\talpha_sq\tepsilon\tsupported\tvalue\n";
  for (const auto& wc : rep.walls)
    os << to_string(wc.wall.alpha) << '\t' << wc.wall.r << '\t' << wc.wall.alpha_sq << '\t' << wc.wall.epsilon << '\t'
       << (wc.wall.supported ? "yes" : "no") << '\t' << (wc.delta ? wc.value.str() : "-") << '\n';
  os << "total\t" << rep.total.str() << '\n';
  for (const auto& w : rep.warnings) os << "# warning: " << w << '\n';
  if (errata)
    for (const auto& e : errata->entries)
      os << "# erratum: " << e.location << " k" << e.slot << " " << e.monomial << " printed " << e.paper.str()
         << " derived " << e.derived.str() << '\n';
  return os.str();
}

inline std::string erratum_text(const ErratumReport& rep) {
  std::ostringstream os;
  os << "erratum report: " << rep.entries.size() << " entries\n";
  for (const auto& e : rep.entries)
    os << "  " << e.location << " q^" << e.slot << " [" << e.monomial << "] printed " << e.paper.str() << ", derived "
       << e.derived.str() << "\n    " << e.corroboration << '\n';
  for (const auto& c : rep.checks)
    os << "  checked " << c.location << ": " << c.grid_points << " (d,l) points, " << c.slots_compared
       << " slot values, " << (c.consistent() ? "consistent" : std::to_string(c.mismatched_values) + " differ") << '\n';
  return os.str();
}

inline std::string acceptance_line(const acceptance::Result& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title;
}

}  // namespace dwc::cli

#endif  // DWC_CLI_REPORT_HPP
