#ifndef CTXLAB_JSON_IO_HPP
#define CTXLAB_JSON_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctxlab/behaviour.hpp"
#include "ctxlab/contextuality.hpp"
#include "ctxlab/distribution.hpp"
#include "ctxlab/scenario.hpp"
#include "ctxlab/solver.hpp"

namespace ctxlab {

// All files are JSON with rationals as "num/den" strings.  Serialization is
// deterministic: objects keep sorted keys and zero table entries are
// omitted (absent keys read as zero).

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);

// Sparse {"coordinates": [...], "outcomes": [...], "table": {tuple: "n/d"}}.
nlohmann::json distribution_to_json(const Distribution& d);

// Behaviour file object: {"scenario": <scenario object>, "tables":
// {context key: {tuple key: "n/d"}}}.  When loading, "scenario" may instead
// be a path string resolved relative to base_dir.
nlohmann::json behaviour_to_json(const Behaviour& b);
Behaviour behaviour_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

nlohmann::json report_to_json(const ClassificationReport& report);

// One line: "nd=true ndeg=true nc=false ncext=false".
std::string report_summary(const ClassificationReport& report);

// [{"label": ..., "coefficients": ["n/d", ...], "rhs": "n/d"}, ...]
nlohmann::json equalities_to_json(const std::vector<Equality>& list);

// {"extended_scenario": ..., "extension": <behaviour file object>}.
nlohmann::json extension_to_json(const BehaviourExtension& extension);

// Parse errors carry the file path and the parser's position diagnostics.
nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const nlohmann::json& j, const std::filesystem::path& path);

Scenario load_scenario(const std::filesystem::path& path);
Behaviour load_behaviour(const std::filesystem::path& path);

} // namespace ctxlab

#endif // CTXLAB_JSON_IO_HPP
