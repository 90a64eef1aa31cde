#include "ctxlab/distribution.hpp"

#include <algorithm>
#include <set>

namespace ctxlab {

std::size_t tuple_space_size(std::size_t outcome_count, std::size_t coordinate_count) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < coordinate_count; ++i) {
        if (result > (std::size_t{1} << 62) / outcome_count) {
            throw Error(ErrorCode::ProblemTooLarge, "outcome tuple space overflows");
        }
        result *= outcome_count;
    }
    return result;
}

Distribution::Distribution(std::vector<std::string> coordinates,
                           std::vector<OutcomeId> outcomes,
                           std::vector<Rational> table)
    : coordinates_(std::move(coordinates)),
      outcomes_(std::move(outcomes)),
      table_(std::move(table)) {
    if (coordinates_.empty()) {
        throw Error(ErrorCode::EmptySubset, "distribution has no coordinates");
    }
    std::set<std::string> seen(coordinates_.begin(), coordinates_.end());
    if (seen.size() != coordinates_.size()) {
        throw Error(ErrorCode::CoordinateMismatch, "duplicate coordinate name");
    }
    if (outcomes_.empty()) {
        throw Error(ErrorCode::EmptyOutcomeSet, "distribution has no outcomes");
    }
    if (!std::is_sorted(outcomes_.begin(), outcomes_.end()) ||
        std::adjacent_find(outcomes_.begin(), outcomes_.end()) != outcomes_.end()) {
        throw Error(ErrorCode::MismatchedOutcomeSets, "outcome set must be sorted and duplicate-free");
    }
    std::size_t expected = tuple_space_size(outcomes_.size(), coordinates_.size());
    if (table_.size() != expected) {
        throw Error(ErrorCode::DimensionMismatch,
                    "table has " + std::to_string(table_.size()) + " entries, expected " +
                        std::to_string(expected));
    }
    Rational total = 0;
    for (const auto& value : table_) {
        if (value < 0) {
            throw Error(ErrorCode::NegativeProbability,
                        "negative probability " + to_fraction(value));
        }
        total += value;
    }
    if (total != 1) {
        throw Error(ErrorCode::SumNotOne, "probabilities sum to " + to_fraction(total));
    }
}

Distribution Distribution::point_mass(std::vector<std::string> coordinates,
                                      std::vector<OutcomeId> outcomes,
                                      const std::vector<OutcomeId>& tuple) {
    if (!std::is_sorted(outcomes.begin(), outcomes.end())) {
        throw Error(ErrorCode::MismatchedOutcomeSets, "outcome set must be sorted and duplicate-free");
    }
    if (tuple.size() != coordinates.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "tuple has " + std::to_string(tuple.size()) + " entries, expected " +
                        std::to_string(coordinates.size()));
    }
    std::size_t cells = tuple_space_size(outcomes.size(), coordinates.size());
    std::size_t index = 0;
    for (const auto& o : tuple) {
        auto it = std::lower_bound(outcomes.begin(), outcomes.end(), o);
        if (it == outcomes.end() || *it != o) {
            throw Error(ErrorCode::MismatchedOutcomeSets,
                        "outcome '" + o + "' is not in the outcome set");
        }
        index = index * outcomes.size() + static_cast<std::size_t>(it - outcomes.begin());
    }
    std::vector<Rational> table(cells, Rational(0));
    table[index] = 1;
    return Distribution(std::move(coordinates), std::move(outcomes), std::move(table));
}

Distribution Distribution::uniform(std::vector<std::string> coordinates,
                                   std::vector<OutcomeId> outcomes) {
    std::size_t cells = tuple_space_size(outcomes.size(), coordinates.size());
    std::vector<Rational> table(cells, Rational(1) / Rational(static_cast<long>(cells)));
    return Distribution(std::move(coordinates), std::move(outcomes), std::move(table));
}

std::size_t Distribution::index_of(const std::vector<OutcomeId>& tuple) const {
    if (tuple.size() != coordinates_.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "tuple has " + std::to_string(tuple.size()) + " entries, expected " +
                        std::to_string(coordinates_.size()));
    }
    std::size_t index = 0;
    for (const auto& o : tuple) {
        auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), o);
        if (it == outcomes_.end() || *it != o) {
            throw Error(ErrorCode::MismatchedOutcomeSets,
                        "outcome '" + o + "' is not in the outcome set");
        }
        index = index * outcomes_.size() + static_cast<std::size_t>(it - outcomes_.begin());
    }
    return index;
}

std::vector<OutcomeId> Distribution::tuple_at(std::size_t index) const {
    if (index >= table_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "tuple index out of range");
    }
    std::vector<OutcomeId> tuple(coordinates_.size());
    for (std::size_t i = coordinates_.size(); i-- > 0;) {
        tuple[i] = outcomes_[index % outcomes_.size()];
        index /= outcomes_.size();
    }
    return tuple;
}

const Rational& Distribution::at(const std::vector<OutcomeId>& tuple) const {
    return table_[index_of(tuple)];
}

bool same_table(const Distribution& a, const Distribution& b) {
    return a.outcomes() == b.outcomes() && a.table() == b.table();
}

Distribution marginalize(const Distribution& source, const std::vector<std::string>& keep) {
    if (keep.empty()) {
        throw Error(ErrorCode::EmptyKeepSet, "marginal onto no coordinates");
    }
    std::set<std::string> keep_set(keep.begin(), keep.end());
    for (const auto& name : keep) {
        if (std::find(source.coordinates().begin(), source.coordinates().end(), name) ==
            source.coordinates().end()) {
            throw Error(ErrorCode::UnknownCoordinate, "coordinate '" + name + "' not present");
        }
    }

    std::vector<std::string> kept;
    std::vector<std::size_t> kept_positions;
    for (std::size_t i = 0; i < source.coordinates().size(); ++i) {
        if (keep_set.count(source.coordinates()[i])) {
            kept.push_back(source.coordinates()[i]);
            kept_positions.push_back(i);
        }
    }

    std::size_t k = source.outcomes().size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i < kept.size(); ++i) cells *= k;
    std::vector<Rational> table(cells, Rational(0));

    // digit extraction: source index -> kept digits in kept order
    std::vector<std::size_t> place(source.coordinates().size());
    std::size_t scale = 1;
    for (std::size_t i = source.coordinates().size(); i-- > 0;) {
        place[i] = scale;
        scale *= k;
    }
    for (std::size_t index = 0; index < source.size(); ++index) {
        if (source.at(index) == 0) continue;
        std::size_t target = 0;
        for (std::size_t pos : kept_positions) {
            target = target * k + (index / place[pos]) % k;
        }
        table[target] += source.at(index);
    }
    return Distribution(std::move(kept), source.outcomes(), std::move(table));
}

Distribution relabel_coordinates(const Distribution& source,
                                 const std::vector<std::string>& names) {
    if (names.size() != source.coordinates().size()) {
        throw Error(ErrorCode::CoordinateMismatch,
                    "relabel needs one name per coordinate");
    }
    return Distribution(names, source.outcomes(), source.table());
}

Distribution permute_coordinates(const Distribution& source,
                                 const std::vector<std::string>& order) {
    std::vector<std::size_t> from(order.size());
    {
        std::vector<std::string> sorted_order = order;
        std::vector<std::string> sorted_source = source.coordinates();
        std::sort(sorted_order.begin(), sorted_order.end());
        std::sort(sorted_source.begin(), sorted_source.end());
        if (sorted_order != sorted_source) {
            throw Error(ErrorCode::CoordinateMismatch,
                        "order is not a permutation of the coordinates");
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        from[i] = static_cast<std::size_t>(
            std::find(source.coordinates().begin(), source.coordinates().end(), order[i]) -
            source.coordinates().begin());
    }

    std::size_t k = source.outcomes().size();
    std::vector<std::size_t> place(order.size());
    std::size_t scale = 1;
    for (std::size_t i = order.size(); i-- > 0;) {
        place[i] = scale;
        scale *= k;
    }
    std::vector<Rational> table(source.size(), Rational(0));
    for (std::size_t index = 0; index < source.size(); ++index) {
        std::size_t target = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            target = target * k + (index / place[from[i]]) % k;
        }
        table[target] = source.at(index);
    }
    return Distribution(order, source.outcomes(), std::move(table));
}

Coupling make_coupling(Distribution joint, std::vector<Distribution> targets) {
    if (targets.size() != joint.coordinates().size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "coupling needs one target per joint coordinate");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i].coordinates().size() != 1) {
            throw Error(ErrorCode::DimensionMismatch,
                        "coupling targets must be single-variable distributions");
        }
        if (targets[i].outcomes() != joint.outcomes()) {
            throw Error(ErrorCode::MismatchedOutcomeSets,
                        "target outcome set differs from the joint's");
        }
        Distribution marginal = marginalize(joint, {joint.coordinates()[i]});
        if (marginal.table() != targets[i].table()) {
            throw Error(ErrorCode::MarginalMismatch,
                        "joint marginal on '" + joint.coordinates()[i] +
                            "' differs from its target");
        }
    }
    return Coupling(std::move(joint), std::move(targets));
}

namespace {

std::vector<std::string> coupling_names(const std::vector<Distribution>& targets,
                                        const std::vector<std::string>& coordinate_names) {
    if (targets.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "coupling of an empty family");
    }
    std::vector<std::string> names = coordinate_names;
    if (names.empty()) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            names.push_back("s" + std::to_string(i + 1));
        }
    }
    if (names.size() != targets.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "need one coordinate name per coupled distribution");
    }
    for (const auto& t : targets) {
        if (t.coordinates().size() != 1) {
            throw Error(ErrorCode::DimensionMismatch,
                        "coupling targets must be single-variable distributions");
        }
        if (t.outcomes() != targets.front().outcomes()) {
            throw Error(ErrorCode::MismatchedOutcomeSets,
                        "coupled distributions must share one outcome set");
        }
    }
    return names;
}

} // namespace

Coupling product_coupling(const std::vector<Distribution>& targets,
                          const std::vector<std::string>& coordinate_names) {
    std::vector<std::string> names = coupling_names(targets, coordinate_names);
    std::size_t k = targets.front().outcomes().size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) cells *= k;

    std::vector<Rational> table(cells, Rational(0));
    for (std::size_t index = 0; index < cells; ++index) {
        Rational value = 1;
        std::size_t rest = index;
        for (std::size_t i = targets.size(); i-- > 0;) {
            value *= targets[i].at(rest % k);
            rest /= k;
        }
        table[index] = value;
    }
    Distribution joint(names, targets.front().outcomes(), std::move(table));
    return make_coupling(std::move(joint), targets);
}

Rational diagonal_mass(const Distribution& joint) {
    std::size_t k = joint.outcomes().size();
    Rational total = 0;
    for (std::size_t o = 0; o < k; ++o) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < joint.coordinates().size(); ++i) {
            index = index * k + o;
        }
        total += joint.at(index);
    }
    return total;
}

Rational diagonal_mass(const Coupling& coupling) {
    return diagonal_mass(coupling.joint());
}

Rational maximal_coupling_value(const std::vector<Distribution>& targets) {
    coupling_names(targets, {});
    Rational total = 0;
    for (std::size_t o = 0; o < targets.front().outcomes().size(); ++o) {
        Rational smallest = targets.front().at(o);
        for (const auto& t : targets) smallest = std::min(smallest, t.at(o));
        total += smallest;
    }
    return total;
}

Coupling maximal_coupling(const std::vector<Distribution>& targets,
                          const std::vector<std::string>& coordinate_names) {
    std::vector<std::string> names = coupling_names(targets, coordinate_names);
    std::size_t n = targets.size();
    std::size_t k = targets.front().outcomes().size();

    if (n == 1) {
        Distribution joint = relabel_coordinates(targets.front(), names);
        return make_coupling(std::move(joint), targets);
    }

    std::vector<Rational> floor(k);
    Rational matched = 0;
    for (std::size_t o = 0; o < k; ++o) {
        Rational smallest = targets.front().at(o);
        for (const auto& t : targets) smallest = std::min(smallest, t.at(o));
        floor[o] = smallest;
        matched += smallest;
    }

    std::size_t cells = 1;
    for (std::size_t i = 0; i < n; ++i) cells *= k;
    std::vector<Rational> table(cells, Rational(0));

    for (std::size_t o = 0; o < k; ++o) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < n; ++i) index = index * k + o;
        table[index] += floor[o];
    }

    Rational leftover = Rational(1) - matched;
    if (leftover != 0) {
        // residuals r_i = p_i - floor, each of mass leftover; spread their
        // product scaled by leftover^(n-1)
        std::vector<std::vector<Rational>> residual(n, std::vector<Rational>(k));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t o = 0; o < k; ++o) {
                residual[i][o] = targets[i].at(o) - floor[o];
            }
        }
        Rational scale = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) scale *= leftover;
        for (std::size_t index = 0; index < cells; ++index) {
            Rational value = 1;
            std::size_t rest = index;
            for (std::size_t i = n; i-- > 0;) {
                value *= residual[i][rest % k];
                if (value == 0) break;
                rest /= k;
            }
            if (value != 0) table[index] += value / scale;
        }
    }

    Distribution joint(names, targets.front().outcomes(), std::move(table));
    return make_coupling(std::move(joint), targets);
}

} // namespace ctxlab
