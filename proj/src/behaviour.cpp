#include "ctxlab/behaviour.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace ctxlab {

namespace {

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : key) {
        if (c == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

} // namespace

const Distribution& Behaviour::table(const Context& context) const {
    auto position = scenario_.context_position(context);
    if (!position) {
        throw Error(ErrorCode::MissingContextTable,
                    "no context {" + context_key(context) + "} in the scenario");
    }
    return tables_[*position];
}

Behaviour make_behaviour(Scenario scenario, std::vector<Distribution> tables) {
    if (tables.size() != scenario.contexts().size()) {
        throw Error(ErrorCode::MissingContextTable,
                    "behaviour has " + std::to_string(tables.size()) + " tables for " +
                        std::to_string(scenario.contexts().size()) + " contexts");
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (tables[i].coordinates() != scenario.contexts()[i]) {
            throw Error(ErrorCode::CoordinateMismatch,
                        "table " + std::to_string(i) + " coordinates do not match context {" +
                            context_key(scenario.contexts()[i]) + "}");
        }
        if (tables[i].outcomes() != scenario.outcomes()) {
            throw Error(ErrorCode::MismatchedOutcomeSets,
                        "table for {" + context_key(scenario.contexts()[i]) +
                            "} uses a different outcome set");
        }
    }
    Behaviour b;
    b.scenario_ = std::move(scenario);
    b.tables_ = std::move(tables);
    return b;
}

Behaviour validate_behaviour(const Scenario& scenario, const RawTables& raw) {
    for (const auto& [key, _] : raw) {
        Context candidate = split_key(key);
        if (!scenario.context_position(candidate)) {
            throw Error(ErrorCode::ParseError, "tables mention unknown context '" + key + "'");
        }
    }

    std::vector<Distribution> tables;
    for (const auto& context : scenario.contexts()) {
        const std::string key = context_key(context);
        auto it = raw.find(key);
        if (it == raw.end()) {
            throw Error(ErrorCode::MissingContextTable, "no table for context {" + key + "}");
        }

        const std::size_t k = scenario.outcomes().size();
        std::vector<Rational> table(tuple_space_size(k, context.size()), Rational(0));
        Rational total = 0;
        for (const auto& [tuple_key, value] : it->second) {
            std::vector<std::string> tuple = split_key(tuple_key);
            if (tuple.size() != context.size()) {
                throw Error(ErrorCode::ParseError,
                            "context {" + key + "}: tuple key '" + tuple_key + "' has " +
                                std::to_string(tuple.size()) + " outcomes, expected " +
                                std::to_string(context.size()));
            }
            std::size_t index = 0;
            for (const auto& o : tuple) {
                auto oi = scenario.outcome_index(o);
                if (!oi) {
                    throw Error(ErrorCode::ParseError,
                                "context {" + key + "}: unknown outcome '" + o + "' in tuple key '" +
                                    tuple_key + "'");
                }
                index = index * k + *oi;
            }
            if (value < 0) {
                throw Error(ErrorCode::NegativeProbability,
                            "context {" + key + "}: entry '" + tuple_key + "' is " +
                                to_fraction(value));
            }
            table[index] += value;
            total += value;
        }
        if (total != 1) {
            throw Error(ErrorCode::SumNotOne,
                        "context {" + key + "}: entries sum to " + to_fraction(total));
        }
        tables.emplace_back(context, scenario.outcomes(), std::move(table));
    }
    return make_behaviour(scenario, std::move(tables));
}

Distribution context_marginal(const Behaviour& b, const Context& context,
                              const std::vector<MeasurementId>& subset) {
    const Distribution& table = b.table(context);
    if (subset.empty()) {
        throw Error(ErrorCode::EmptySubset, "marginal onto the empty set");
    }
    std::vector<MeasurementId> wanted = subset;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    for (const auto& x : wanted) {
        if (!std::binary_search(context.begin(), context.end(), x)) {
            throw Error(ErrorCode::NotASubset,
                        "'" + x + "' is not in context {" + context_key(context) + "}");
        }
    }
    return marginalize(table, wanted);
}

Distribution point_distribution(const Behaviour& b, const Context& context,
                                const MeasurementId& x) {
    const Distribution& table = b.table(context);
    if (!std::binary_search(context.begin(), context.end(), x)) {
        throw Error(ErrorCode::MeasurementNotInContext,
                    "'" + x + "' is not in context {" + context_key(context) + "}");
    }
    return marginalize(table, {x});
}

NondisturbanceVerdict is_nondisturbing(const Behaviour& b) {
    const auto& contexts = b.scenario().contexts();
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        for (std::size_t j = i + 1; j < contexts.size(); ++j) {
            std::vector<MeasurementId> overlap;
            std::set_intersection(contexts[i].begin(), contexts[i].end(),
                                  contexts[j].begin(), contexts[j].end(),
                                  std::back_inserter(overlap));
            if (overlap.empty()) continue;
            Distribution lhs = marginalize(b.tables()[i], overlap);
            Distribution rhs = marginalize(b.tables()[j], overlap);
            if (lhs.table() != rhs.table()) {
                return {false,
                        DisturbanceWitness{contexts[i], contexts[j], overlap, std::move(lhs),
                                           std::move(rhs)}};
            }
        }
    }
    return {true, std::nullopt};
}

NondegeneracyVerdict is_nondegenerate(const Behaviour& b) {
    for (const auto& x : b.scenario().measurements()) {
        std::vector<Context> through = contexts_of(b.scenario(), x);
        for (std::size_t i = 0; i + 1 < through.size(); ++i) {
            Distribution lhs = point_distribution(b, through[i], x);
            Distribution rhs = point_distribution(b, through[i + 1], x);
            if (lhs.table() != rhs.table()) {
                return {false,
                        DegeneracyWitness{x, through[i], through[i + 1], std::move(lhs),
                                          std::move(rhs)}};
            }
        }
    }
    return {true, std::nullopt};
}

std::size_t vector_length(const Scenario& scenario) {
    std::size_t total = 0;
    for (const auto& c : scenario.contexts()) {
        total += tuple_space_size(scenario.outcomes().size(), c.size());
    }
    return total;
}

std::vector<std::size_t> context_offsets(const Scenario& scenario) {
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (const auto& c : scenario.contexts()) {
        offsets.push_back(total);
        total += tuple_space_size(scenario.outcomes().size(), c.size());
    }
    return offsets;
}

BehaviourVector vectorize(const Behaviour& b) {
    BehaviourVector v{b.scenario(), {}};
    v.entries.reserve(vector_length(b.scenario()));
    for (const auto& table : b.tables()) {
        v.entries.insert(v.entries.end(), table.table().begin(), table.table().end());
    }
    return v;
}

Behaviour behaviour_from_vector(const Scenario& scenario, const std::vector<Rational>& entries) {
    if (entries.size() != vector_length(scenario)) {
        throw Error(ErrorCode::DimensionMismatch,
                    "vector has " + std::to_string(entries.size()) + " entries, expected " +
                        std::to_string(vector_length(scenario)));
    }
    std::vector<Distribution> tables;
    std::size_t offset = 0;
    for (const auto& context : scenario.contexts()) {
        std::size_t block = tuple_space_size(scenario.outcomes().size(), context.size());
        std::vector<Rational> table(entries.begin() + static_cast<std::ptrdiff_t>(offset),
                                    entries.begin() + static_cast<std::ptrdiff_t>(offset + block));
        tables.emplace_back(context, scenario.outcomes(), std::move(table));
        offset += block;
    }
    return make_behaviour(scenario, std::move(tables));
}

Behaviour degenerate_counterexample(const Distribution& p_a, const Distribution& p_d,
                                    const Distribution& f, const Distribution& g) {
    if (p_a.coordinates().size() != 1 || p_d.coordinates().size() != 1) {
        throw Error(ErrorCode::DimensionMismatch,
                    "endpoint distributions must be single-variable");
    }
    if (f.coordinates().size() != 2 || g.coordinates().size() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "f and g must be joints over two variables");
    }
    const auto& outcomes = p_a.outcomes();
    if (p_d.outcomes() != outcomes || f.outcomes() != outcomes || g.outcomes() != outcomes) {
        throw Error(ErrorCode::MismatchedOutcomeSets,
                    "all four distributions must share one outcome set");
    }
    for (int side = 0; side < 2; ++side) {
        Distribution fm = marginalize(f, {f.coordinates()[static_cast<std::size_t>(side)]});
        Distribution gm = marginalize(g, {g.coordinates()[static_cast<std::size_t>(side)]});
        if (fm.table() != gm.table()) {
            throw Error(ErrorCode::MarginalMismatch,
                        "f and g disagree on marginal " + std::to_string(side + 1));
        }
    }
    if (f.table() == g.table()) {
        throw Error(ErrorCode::CouplingsEqual, "f = g cannot witness disturbance");
    }

    RawScenario raw;
    raw.measurements = {"a", "b", "c", "d"};
    raw.contexts = {{"a", "b", "c"}, {"b", "c", "d"}};
    raw.outcomes = outcomes;
    Scenario scenario = validate_scenario(raw);

    const std::size_t k = outcomes.size();
    std::vector<Rational> first(k * k * k), second(k * k * k);
    for (std::size_t ia = 0; ia < k; ++ia) {
        for (std::size_t ib = 0; ib < k; ++ib) {
            for (std::size_t ic = 0; ic < k; ++ic) {
                first[(ia * k + ib) * k + ic] = p_a.at(ia) * f.at(ib * k + ic);
            }
        }
    }
    for (std::size_t ib = 0; ib < k; ++ib) {
        for (std::size_t ic = 0; ic < k; ++ic) {
            for (std::size_t id = 0; id < k; ++id) {
                second[(ib * k + ic) * k + id] = g.at(ib * k + ic) * p_d.at(id);
            }
        }
    }

    std::vector<Distribution> tables;
    tables.emplace_back(scenario.contexts()[0], outcomes, std::move(first));
    tables.emplace_back(scenario.contexts()[1], outcomes, std::move(second));
    return make_behaviour(std::move(scenario), std::move(tables));
}

Behaviour behaviour_from_global(const Scenario& scenario, const Distribution& global) {
    if (global.coordinates() != scenario.measurements()) {
        throw Error(ErrorCode::CoordinateMismatch,
                    "global distribution must range over all measurements in canonical order");
    }
    if (global.outcomes() != scenario.outcomes()) {
        throw Error(ErrorCode::MismatchedOutcomeSets,
                    "global distribution uses a different outcome set");
    }
    std::vector<Distribution> tables;
    for (const auto& context : scenario.contexts()) {
        tables.push_back(marginalize(global, context));
    }
    return make_behaviour(scenario, std::move(tables));
}

namespace {

std::uint64_t draw_bounded(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == std::numeric_limits<std::uint64_t>::max()) return rng();
    const std::uint64_t span = bound + 1;
    const std::uint64_t reject_above =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r = rng();
    while (r >= reject_above) r = rng();
    return r % span;
}

} // namespace

Behaviour sample_behaviour(const Scenario& scenario, std::uint64_t seed,
                           std::uint64_t weight_bound) {
    if (weight_bound < 1) {
        throw Error(ErrorCode::DimensionMismatch, "weight bound must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<Distribution> tables;
    for (const auto& context : scenario.contexts()) {
        const std::size_t cells = tuple_space_size(scenario.outcomes().size(), context.size());
        std::vector<std::uint64_t> weights(cells);
        std::uint64_t total = 0;
        while (total == 0) {
            for (auto& w : weights) {
                w = draw_bounded(rng, weight_bound);
                total += w;
            }
        }
        std::vector<Rational> table(cells);
        for (std::size_t i = 0; i < cells; ++i) {
            table[i] = Rational(weights[i]) / Rational(total);
        }
        tables.emplace_back(context, scenario.outcomes(), std::move(table));
    }
    return make_behaviour(scenario, std::move(tables));
}

} // namespace ctxlab
