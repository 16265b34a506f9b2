#pragma once

#include <potcap/capacity.hpp>
#include <potcap/classify.hpp>
#include <potcap/exponents.hpp>
#include <potcap/green.hpp>
#include <potcap/measures.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace potcap {

// Model described by a JSON spec. `growth.radial` is set for the weighted kinds
// (power, log); ahlfors and table models are growth-only.
struct ParsedModel {
    GrowthFunction growth;
    bool is_radial() const { return static_cast<bool>(growth.radial); }
    const RadialMeasure& measure() const;  // throws when not radial
};

// Accepted kinds (unknown fields are rejected everywhere):
//   {"kind":"power",   "n":3, "alpha":1.0}
//   {"kind":"log",     "n":3, "s":3.0, "beta":1.0}
//   {"kind":"ahlfors", "Q":2.0}
//   {"kind":"table",   "points":[[rho,f],...],
//                      "at_zero":{"a":..,"b":..,"C":..},      (optional)
//                      "at_infinity":{"a":..,"b":..,"C":..}}  (optional)
ParsedModel parse_model(const nlohmann::json& j);

// `spec` is inline JSON when it starts with '{', otherwise a path to a JSON file.
ParsedModel load_model(const std::string& spec);

nlohmann::json to_json(const ExponentReport& rep);
ExponentReport exponent_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CriticalExponents& ce);
CriticalExponents critical_exponents_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

// {"tau": ..}/{"t": ..} keyed by norm kind; value is a number, "divergent", or
// "inconclusive"
nlohmann::json to_json(const NormResult& nr);
NormResult norm_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CapacityResult& cr);
CapacityResult capacity_result_from_json(const nlohmann::json& j);

}  // namespace potcap
