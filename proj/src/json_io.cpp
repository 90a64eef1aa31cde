#include "ctxlab/json_io.hpp"

#include <fstream>

namespace ctxlab {

namespace {

using nlohmann::json;

const json& require_member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) {
        throw Error(ErrorCode::ParseError, where + " must be an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw Error(ErrorCode::ParseError, where + " is missing \"" + key + "\"");
    }
    return *it;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw Error(ErrorCode::ParseError, where + " must be an array");
    }
    std::vector<std::string> items;
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw Error(ErrorCode::ParseError, where + " must contain strings only");
        }
        items.push_back(item.get<std::string>());
    }
    return items;
}

std::string tuple_key(const Distribution& d, std::size_t index) {
    std::vector<OutcomeId> tuple = d.tuple_at(index);
    std::string key;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i > 0) key += ',';
        key += tuple[i];
    }
    return key;
}

json table_to_json(const Distribution& d) {
    json table = json::object();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.at(i) != 0) table[tuple_key(d, i)] = to_fraction(d.at(i));
    }
    return table;
}

json certificate_to_json(const LabelledCertificate& certificate) {
    json rows = json::array();
    for (const auto& [label, multiplier] : certificate) {
        if (multiplier == 0) continue;
        rows.push_back({{"label", label}, {"multiplier", to_fraction(multiplier)}});
    }
    return rows;
}

} // namespace

nlohmann::json scenario_to_json(const Scenario& scenario) {
    json contexts = json::array();
    for (const auto& c : scenario.contexts()) contexts.push_back(c);
    return json{{"measurements", scenario.measurements()},
                {"contexts", contexts},
                {"outcomes", scenario.outcomes()}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
    RawScenario raw;
    raw.measurements = string_list(require_member(j, "measurements", "scenario"),
                                   "scenario \"measurements\"");
    raw.outcomes = string_list(require_member(j, "outcomes", "scenario"), "scenario \"outcomes\"");
    const json& contexts = require_member(j, "contexts", "scenario");
    if (!contexts.is_array()) {
        throw Error(ErrorCode::ParseError, "scenario \"contexts\" must be an array");
    }
    for (const auto& c : contexts) {
        raw.contexts.push_back(string_list(c, "scenario context"));
    }
    return validate_scenario(raw);
}

nlohmann::json distribution_to_json(const Distribution& d) {
    return json{{"coordinates", d.coordinates()},
                {"outcomes", d.outcomes()},
                {"table", table_to_json(d)}};
}

nlohmann::json behaviour_to_json(const Behaviour& b) {
    json tables = json::object();
    for (std::size_t i = 0; i < b.tables().size(); ++i) {
        tables[context_key(b.scenario().contexts()[i])] = table_to_json(b.tables()[i]);
    }
    return json{{"scenario", scenario_to_json(b.scenario())}, {"tables", tables}};
}

Behaviour behaviour_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    const json& scenario_field = require_member(j, "scenario", "behaviour");
    Scenario scenario = [&] {
        if (scenario_field.is_string()) {
            std::filesystem::path ref(scenario_field.get<std::string>());
            if (ref.is_relative()) ref = base_dir / ref;
            return load_scenario(ref);
        }
        return scenario_from_json(scenario_field);
    }();

    const json& tables = require_member(j, "tables", "behaviour");
    if (!tables.is_object()) {
        throw Error(ErrorCode::ParseError, "behaviour \"tables\" must be an object");
    }
    RawTables raw;
    for (const auto& [key, table] : tables.items()) {
        if (!table.is_object()) {
            throw Error(ErrorCode::ParseError,
                        "table for context '" + key + "' must be an object");
        }
        auto& entries = raw[key];
        for (const auto& [tuple, value] : table.items()) {
            if (!value.is_string()) {
                throw Error(ErrorCode::ParseError,
                            "context '" + key + "' entry '" + tuple +
                                "' must be a rational string");
            }
            entries[tuple] = parse_fraction(value.get<std::string>());
        }
    }
    return validate_behaviour(scenario, raw);
}

namespace {

json nd_to_json(const NondisturbanceVerdict& v) {
    json out{{"value", v.nondisturbing}};
    if (v.witness) {
        out["witness"] = json{{"first_context", v.witness->first_context},
                              {"second_context", v.witness->second_context},
                              {"overlap", v.witness->overlap},
                              {"lhs", distribution_to_json(v.witness->lhs)},
                              {"rhs", distribution_to_json(v.witness->rhs)}};
    }
    return out;
}

json ndeg_to_json(const NondegeneracyVerdict& v) {
    json out{{"value", v.nondegenerate}};
    if (v.witness) {
        out["witness"] = json{{"measurement", v.witness->measurement},
                              {"first_context", v.witness->first_context},
                              {"second_context", v.witness->second_context},
                              {"lhs", distribution_to_json(v.witness->lhs)},
                              {"rhs", distribution_to_json(v.witness->rhs)}};
    }
    return out;
}

} // namespace

nlohmann::json report_to_json(const ClassificationReport& report) {
    json nc{{"value", report.nc.noncontextual}};
    if (report.nc.global) {
        nc["global_section"] = distribution_to_json(report.nc.global->distribution);
    }
    if (report.nc.certificate) {
        nc["certificate"] = certificate_to_json(*report.nc.certificate);
    }

    json ncext{{"value", report.ncext.noncontextual}};
    if (report.ncext.witness) {
        ncext["witness"] = distribution_to_json(*report.ncext.witness);
    }
    if (report.ncext.certificate) {
        ncext["certificate"] = certificate_to_json(*report.ncext.certificate);
    }

    return json{{"nd", nd_to_json(report.nd)},
                {"ndeg", ndeg_to_json(report.ndeg)},
                {"nc", std::move(nc)},
                {"ncext", std::move(ncext)}};
}

std::string report_summary(const ClassificationReport& report) {
    auto word = [](bool v) { return v ? "true" : "false"; };
    return std::string("nd=") + word(report.nd.nondisturbing) +
           " ndeg=" + word(report.ndeg.nondegenerate) + " nc=" + word(report.nc.noncontextual) +
           " ncext=" + word(report.ncext.noncontextual);
}

nlohmann::json equalities_to_json(const std::vector<Equality>& list) {
    json rows = json::array();
    for (const auto& eq : list) {
        json coefficients = json::array();
        for (const auto& c : eq.coefficients) coefficients.push_back(to_fraction(c));
        rows.push_back({{"label", eq.label},
                        {"coefficients", std::move(coefficients)},
                        {"rhs", to_fraction(eq.rhs)}});
    }
    return rows;
}

nlohmann::json extension_to_json(const BehaviourExtension& extension) {
    return json{{"extended_scenario", scenario_to_json(extension.scenario().full())},
                {"extension", behaviour_to_json(extension.extended())}};
}

nlohmann::json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void save_json(const nlohmann::json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::ParseError, "cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << '\n';
}

Scenario load_scenario(const std::filesystem::path& path) {
    return scenario_from_json(load_json(path));
}

Behaviour load_behaviour(const std::filesystem::path& path) {
    json j = load_json(path);
    return behaviour_from_json(j, path.parent_path());
}

} // namespace ctxlab
