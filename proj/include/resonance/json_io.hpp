#pragma once

#include <nlohmann/json.hpp>

#include "resonance/conditions.hpp"
#include "resonance/conley.hpp"
#include "resonance/nemytskii.hpp"
#include "resonance/orbits.hpp"
#include "resonance/semiflow.hpp"

namespace resonance {

// Artifacts use ordered_json: insertion order is preserved, so identical
// inputs dump identical bytes.
using Json = nlohmann::ordered_json;

Json to_json(const SpectralDomain& d);
Json to_json(const EigenSystem& sys);
Json to_json(const SpectralDecomposition& d);
Json to_json(const BoundReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const ConleyVerdict& v);
Json to_json(const Equilibrium& e);
Json to_json(const Shot& s);
Json to_json(const DriftReport& r);
Json to_json(const Scenario& sc);
Json to_json(const ConnectionReport& r);
Json trajectory_summary(const Trajectory& t);

// Wraps a payload with tool name/version, schema name+version, and the
// resolved configuration. Deliberately carries no timestamps.
Json wrap_artifact(const std::string& schema, const Json& config, Json payload);

Scenario scenario_from_json(const Json& j);  // unknown keys rejected

void write_trajectory_csv(const Trajectory& t, std::ostream& os);
void write_trajectory_csv_file(const Trajectory& t, const std::string& path);

// CLI exit-code mapping: 0 holds / pass / orbit-exists, 1 fails,
// 2 inconclusive / no-conclusion, 3 malformed report.
int report_exit_code(const Json& artifact);

}  // namespace resonance
