#pragma once

#include <string>

#include <json.hpp>

#include "gentleq/gentle.hpp"

namespace gentleq {

/// States load from either {"bloch": [x, y, z]} or
/// {"matrix": {"dim": d, "re": [...], "im": [...]}} (row-major).
DensityMatrix state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const DensityMatrix& rho);

/// {"dim": d, "outcomes": [{"label": s, "re": [...], "im": [...]}]}.
/// Loading re-validates the completeness relation.
Measurement measurement_from_json(const nlohmann::json& j);
nlohmann::json measurement_to_json(const Measurement& m);

/// {"labels": [...], "p": [...]}.
OutcomeDistribution pmf_from_json(const nlohmann::json& j);
nlohmann::json pmf_to_json(const OutcomeDistribution& dist);

nlohmann::json gentleness_report_to_json(const GentlenessReport& report);

} // namespace gentleq
