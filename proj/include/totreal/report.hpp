#pragma once

#include <string>

#include <json.hpp>

#include "totreal/bounds.hpp"

namespace totreal {

// Machine-readable command report.  Schema (stable keys):
//   {"command": str, "inputs": obj, "results": obj,
//    "error_estimates": obj, "wall_time_ms": num}
struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json error_estimates = nlohmann::json::object();
  double wall_time_ms = 0;
};

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"command", r.command},
                     {"inputs", r.inputs},
                     {"results", r.results},
                     {"error_estimates", r.error_estimates},
                     {"wall_time_ms", r.wall_time_ms}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("command").get_to(r.command);
  r.inputs = j.at("inputs");
  r.results = j.at("results");
  r.error_estimates = j.at("error_estimates");
  j.at("wall_time_ms").get_to(r.wall_time_ms);
}

inline nlohmann::json bound_report_json(const BoundReport& rep) {
  return nlohmann::json{{"p", static_cast<double>(rep.exponent)},
                        {"circle_integral", static_cast<double>(rep.circle_integral)},
                        {"energy", static_cast<double>(rep.energy)},
                        {"main_term", static_cast<double>(rep.main_term)},
                        {"bound", static_cast<double>(rep.bound)},
                        {"bound_error", static_cast<double>(rep.bound_error)},
                        {"lipschitz_lower", static_cast<double>(rep.lipschitz.lower)},
                        {"lipschitz_upper", static_cast<double>(rep.lipschitz.upper)},
                        {"converged", rep.converged}};
}

// CSV row format shared by the sweep command and its tests.
inline std::string sweep_csv_header() { return "p,circle_integral,energy,main_term,bound,err"; }

inline std::string sweep_csv_row(const SweepPoint& pt) {
  char buf[256];
  const auto& r = pt.report;
  std::snprintf(buf, sizeof buf, "%.12Lg,%.15Lg,%.15Lg,%.15Lg,%.15Lg,%.6Lg",
                r.exponent, r.circle_integral, r.energy, r.main_term, r.bound,
                pt.ok ? r.bound_error : std::numeric_limits<long double>::quiet_NaN());
  return buf;
}

}  // namespace totreal
