#include "ctxlab/scenario.hpp"

#include <algorithm>
#include <set>

namespace ctxlab {

namespace {

void check_token(const std::string& token, const char* kind) {
    if (token.empty()) {
        throw Error(ErrorCode::InvalidToken, std::string(kind) + " token is empty");
    }
    for (char c : token) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            throw Error(ErrorCode::InvalidToken,
                        std::string(kind) + " token '" + token + "' contains whitespace or a comma");
        }
    }
}

std::vector<std::string> sorted_unique(std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

// a proper subset of b, both sorted unique
bool proper_subset(const Context& a, const Context& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

std::string context_key(const Context& context) {
    std::string key;
    for (std::size_t i = 0; i < context.size(); ++i) {
        if (i > 0) key += ',';
        key += context[i];
    }
    return key;
}

bool Scenario::has_measurement(const MeasurementId& x) const {
    return std::binary_search(measurements_.begin(), measurements_.end(), x);
}

std::optional<std::size_t> Scenario::outcome_index(const OutcomeId& o) const {
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), o);
    if (it == outcomes_.end() || *it != o) return std::nullopt;
    return static_cast<std::size_t>(it - outcomes_.begin());
}

std::optional<std::size_t> Scenario::context_position(const Context& c) const {
    auto it = std::lower_bound(contexts_.begin(), contexts_.end(), c);
    if (it == contexts_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - contexts_.begin());
}

Scenario validate_scenario(const RawScenario& raw) {
    Scenario s;

    for (const auto& m : raw.measurements) check_token(m, "measurement");
    for (const auto& o : raw.outcomes) check_token(o, "outcome");
    s.measurements_ = sorted_unique(raw.measurements);
    s.outcomes_ = sorted_unique(raw.outcomes);

    if (s.outcomes_.empty()) {
        throw Error(ErrorCode::EmptyOutcomeSet, "scenario has no outcomes");
    }
    if (raw.contexts.empty()) {
        throw Error(ErrorCode::EmptyScenario, "scenario has no contexts");
    }

    for (const auto& raw_context : raw.contexts) {
        for (const auto& m : raw_context) check_token(m, "measurement");
        Context c = sorted_unique(raw_context);
        if (c.empty()) {
            throw Error(ErrorCode::EmptyContext, "scenario has an empty context");
        }
        s.contexts_.push_back(std::move(c));
    }
    std::sort(s.contexts_.begin(), s.contexts_.end());
    for (std::size_t i = 0; i + 1 < s.contexts_.size(); ++i) {
        if (s.contexts_[i] == s.contexts_[i + 1]) {
            throw Error(ErrorCode::DuplicateContext,
                        "context {" + context_key(s.contexts_[i]) + "} listed twice");
        }
    }

    // axiom (b): the context collection is an anti-chain
    for (const auto& a : s.contexts_) {
        for (const auto& b : s.contexts_) {
            if (proper_subset(a, b)) {
                throw Error(ErrorCode::NestedContext,
                            "context {" + context_key(a) + "} is contained in {" +
                                context_key(b) + "}");
            }
        }
    }

    // axiom (a): the contexts cover exactly the measurement set
    std::set<MeasurementId> covered;
    for (const auto& c : s.contexts_) {
        for (const auto& m : c) {
            if (!s.has_measurement(m)) {
                throw Error(ErrorCode::UnknownMeasurement,
                            "context {" + context_key(c) + "} uses unlisted measurement '" + m + "'");
            }
            covered.insert(m);
        }
    }
    for (const auto& m : s.measurements_) {
        if (!covered.count(m)) {
            throw Error(ErrorCode::UncoveredMeasurement,
                        "measurement '" + m + "' lies in no context");
        }
    }

    return s;
}

Scenario ncycle_scenario(std::size_t n, std::vector<std::string> outcomes) {
    if (n < 3) {
        throw Error(ErrorCode::DuplicateContext,
                    "n-cycle needs n >= 3 (n = 2 duplicates the single edge)");
    }
    RawScenario raw;
    raw.outcomes = std::move(outcomes);
    for (std::size_t i = 0; i < n; ++i) {
        raw.measurements.push_back("x_" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        raw.contexts.push_back({raw.measurements[i], raw.measurements[(i + 1) % n]});
    }
    return validate_scenario(raw);
}

std::vector<Context> contexts_of(const Scenario& scenario, const MeasurementId& x) {
    if (!scenario.has_measurement(x)) {
        throw Error(ErrorCode::UnknownMeasurement, "'" + x + "' is not a measurement");
    }
    std::vector<Context> result;
    for (const auto& c : scenario.contexts()) {
        if (std::binary_search(c.begin(), c.end(), x)) result.push_back(c);
    }
    return result;
}

std::string ExtendedScenario::tag(const MeasurementId& x, std::size_t context_position) {
    return x + "@" + std::to_string(context_position);
}

std::pair<MeasurementId, std::size_t> ExtendedScenario::split_tag(const std::string& tag_name) const {
    auto it = tag_origin_.find(tag_name);
    if (it == tag_origin_.end()) {
        throw Error(ErrorCode::UnknownMeasurement, "'" + tag_name + "' is not an extended measurement");
    }
    return it->second;
}

std::size_t ExtendedScenario::image_position(std::size_t base_context_index) const {
    return image_positions_.at(base_context_index);
}

std::size_t ExtendedScenario::connection_position(const MeasurementId& x) const {
    auto it = connection_positions_.find(x);
    if (it == connection_positions_.end()) {
        throw Error(ErrorCode::UnknownMeasurement, "measurement '" + x + "' has no connection");
    }
    return it->second;
}

bool ExtendedScenario::has_connection(const MeasurementId& x) const {
    return connection_positions_.count(x) > 0;
}

ExtendedScenario extend_scenario(const Scenario& scenario) {
    ExtendedScenario ext;
    ext.base_ = scenario;

    RawScenario raw;
    raw.outcomes = scenario.outcomes();

    for (std::size_t ci = 0; ci < scenario.contexts().size(); ++ci) {
        Context image;
        for (const auto& x : scenario.contexts()[ci]) {
            std::string t = ExtendedScenario::tag(x, ci);
            ext.tag_origin_[t] = {x, ci};
            raw.measurements.push_back(t);
            image.push_back(std::move(t));
        }
        std::sort(image.begin(), image.end());
        raw.contexts.push_back(image);
        ext.context_images_.push_back(std::move(image));
    }

    for (const auto& x : scenario.measurements()) {
        std::vector<Context> through = contexts_of(scenario, x);
        if (through.size() <= 1) continue;
        Context connection;
        for (const auto& c : through) {
            connection.push_back(ExtendedScenario::tag(x, *scenario.context_position(c)));
        }
        std::sort(connection.begin(), connection.end());
        raw.contexts.push_back(connection);
        ext.connections_.emplace_back(x, std::move(connection));
    }

    ext.full_ = validate_scenario(raw);

    ext.image_positions_.resize(ext.context_images_.size());
    for (std::size_t ci = 0; ci < ext.context_images_.size(); ++ci) {
        ext.image_positions_[ci] = *ext.full_.context_position(ext.context_images_[ci]);
    }
    for (const auto& [x, connection] : ext.connections_) {
        ext.connection_positions_[x] = *ext.full_.context_position(connection);
    }
    return ext;
}

} // namespace ctxlab
