#ifndef CTXLAB_SCENARIO_HPP
#define CTXLAB_SCENARIO_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxlab/errors.hpp"

namespace ctxlab {

// Measurements and outcomes are nonempty string tokens (no whitespace, no
// commas; commas are the separator in context and tuple keys).
using MeasurementId = std::string;
using OutcomeId = std::string;

// A context is kept as a sorted, duplicate-free list of measurement names.
using Context = std::vector<MeasurementId>;

// Comma-joined sorted member list, the canonical key used in file formats.
std::string context_key(const Context& context);

struct RawScenario {
    std::vector<std::string> measurements;
    std::vector<std::vector<std::string>> contexts;
    std::vector<std::string> outcomes;
};

// A compatibility scenario: a finite measurement set, an anti-chain of
// contexts covering it, and a finite outcome set.  Instances are immutable
// and canonically ordered (measurements, outcomes, and context member lists
// sorted lexicographically; the context list sorted as lists).
class Scenario {
public:
    const std::vector<MeasurementId>& measurements() const { return measurements_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const std::vector<OutcomeId>& outcomes() const { return outcomes_; }

    bool has_measurement(const MeasurementId& x) const;
    std::optional<std::size_t> outcome_index(const OutcomeId& o) const;
    std::optional<std::size_t> context_position(const Context& c) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;

private:
    friend Scenario validate_scenario(const RawScenario&);
    friend class ExtendedScenario;
    friend class Behaviour;
    Scenario() = default;

    std::vector<MeasurementId> measurements_;
    std::vector<Context> contexts_;
    std::vector<OutcomeId> outcomes_;
};

// Checks the two scenario axioms (contexts cover the measurement set; no
// context nests inside another) plus basic well-formedness, and returns the
// canonicalized scenario.
Scenario validate_scenario(const RawScenario& raw);

// X = {x_0..x_{n-1}}, contexts {x_i, x_{i+1 mod n}}.  n >= 3; n = 2 would
// duplicate a context.
Scenario ncycle_scenario(std::size_t n, std::vector<std::string> outcomes = {"0", "1"});

// All contexts containing x, in canonical order.
std::vector<Context> contexts_of(const Scenario& scenario, const MeasurementId& x);

// The extension of a scenario: each measurement splits into one copy per
// context containing it, every context is replaced by its image under the
// split, and each measurement occurring in more than one context gains a
// connection context holding all of its copies.
class ExtendedScenario {
public:
    const Scenario& base() const { return base_; }

    // The extended triple itself, valid as a scenario in its own right.
    const Scenario& full() const { return full_; }

    // Image of base().contexts()[i], as a sorted tag list.
    const std::vector<Context>& context_images() const { return context_images_; }

    // (x, T(x)) for every x lying in more than one context, sorted by x.
    const std::vector<std::pair<MeasurementId, Context>>& connections() const {
        return connections_;
    }

    // Copy tag for measurement x in the context at canonical position i.
    static std::string tag(const MeasurementId& x, std::size_t context_position);

    // Inverse of tag(): the base measurement and context position a copy
    // belongs to.
    std::pair<MeasurementId, std::size_t> split_tag(const std::string& tag_name) const;

    // Position of the image of base context i inside full().contexts().
    std::size_t image_position(std::size_t base_context_index) const;
    // Position of T(x) inside full().contexts().
    std::size_t connection_position(const MeasurementId& x) const;
    bool has_connection(const MeasurementId& x) const;

private:
    friend ExtendedScenario extend_scenario(const Scenario&);
    ExtendedScenario() = default;

    Scenario base_;
    Scenario full_;
    std::vector<Context> context_images_;
    std::vector<std::pair<MeasurementId, Context>> connections_;
    std::map<std::string, std::pair<MeasurementId, std::size_t>> tag_origin_;
    std::vector<std::size_t> image_positions_;
    std::map<MeasurementId, std::size_t> connection_positions_;
};

ExtendedScenario extend_scenario(const Scenario& scenario);

} // namespace ctxlab

#endif // CTXLAB_SCENARIO_HPP
