#ifndef CTXLAB_BEHAVIOUR_HPP
#define CTXLAB_BEHAVIOUR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxlab/distribution.hpp"
#include "ctxlab/errors.hpp"
#include "ctxlab/rational.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab {

// A behaviour: one probability distribution per context over the joint
// outcomes of that context's measurements.  Tables are aligned with the
// scenario's canonical context order and their coordinates are exactly the
// context's measurements in that order.
class Behaviour {
public:
    const Scenario& scenario() const { return scenario_; }
    const std::vector<Distribution>& tables() const { return tables_; }

    // Table of a specific context.
    const Distribution& table(const Context& context) const;

    friend bool operator==(const Behaviour&, const Behaviour&) = default;

private:
    friend Behaviour make_behaviour(Scenario scenario, std::vector<Distribution> tables);
    Behaviour() = default;

    Scenario scenario_;
    std::vector<Distribution> tables_;
};

// Sparse numeric tables as read from behaviour files: context key mapped to
// {outcome tuple key: value}; absent tuple keys read as zero.
using RawTables = std::map<std::string, std::map<std::string, Rational>>;

// Packages per-context distributions, checking one table per context with
// matching coordinates and outcome set.
Behaviour make_behaviour(Scenario scenario, std::vector<Distribution> tables);

// Validates sparse tables against a scenario: every context present, keys
// well-formed, entries nonnegative and summing to one per context.
Behaviour validate_behaviour(const Scenario& scenario, const RawTables& raw);

// p^C_E: the marginal of context C's table on a nonempty E, E a subset of C.
Distribution context_marginal(const Behaviour& b, const Context& context,
                              const std::vector<MeasurementId>& subset);

// p^C_x: the single-measurement distribution of x inside context C.
Distribution point_distribution(const Behaviour& b, const Context& context,
                                const MeasurementId& x);

// Two intersecting contexts whose marginals on the overlap disagree.
struct DisturbanceWitness {
    Context first_context;
    Context second_context;
    std::vector<MeasurementId> overlap;
    Distribution lhs;
    Distribution rhs;
};

// A measurement with different single-measurement distributions in two of
// its contexts.
struct DegeneracyWitness {
    MeasurementId measurement;
    Context first_context;
    Context second_context;
    Distribution lhs;
    Distribution rhs;
};

struct NondisturbanceVerdict {
    bool nondisturbing = false;
    std::optional<DisturbanceWitness> witness;
};

struct NondegeneracyVerdict {
    bool nondegenerate = false;
    std::optional<DegeneracyWitness> witness;
};

// Non-disturbance: p^C and p^D agree on C intersect D for every
// intersecting pair.  On failure the witness is the first violating pair in
// canonical order, with the full overlap as subset.
NondisturbanceVerdict is_nondisturbing(const Behaviour& b);

// Non-degeneracy: every measurement induces one distribution across all of
// its contexts.  On failure the witness is the first violating consecutive
// context pair in canonical order.
NondegeneracyVerdict is_nondegenerate(const Behaviour& b);

// Flattened exact coordinates of a behaviour: the tables concatenated in
// canonical context order, each enumerated lexicographically.
struct BehaviourVector {
    Scenario scenario;
    std::vector<Rational> entries;
};

// Total length of behaviour vectors over this scenario: the sum over
// contexts of |O|^|C|.
std::size_t vector_length(const Scenario& scenario);

// Offset of each context's block inside a behaviour vector.
std::vector<std::size_t> context_offsets(const Scenario& scenario);

BehaviourVector vectorize(const Behaviour& b);

// Inverse of vectorize; validates block sums and nonnegativity.
Behaviour behaviour_from_vector(const Scenario& scenario, const std::vector<Rational>& entries);

// The two-context construction separating non-degeneracy from
// non-disturbance: X = {a, b, c, d}, contexts C = {a, b, c} and
// D = {b, c, d}, p^C(s) = p_a(s(a)) f(s(b), s(c)) and
// p^D(t) = g(t(b), t(c)) p_d(t(d)).  f and g must be distinct joints over
// O^2 with identical coordinate-wise marginals, which makes the output
// disturbing on {b, c} yet non-degenerate.
Behaviour degenerate_counterexample(const Distribution& p_a, const Distribution& p_d,
                                    const Distribution& f, const Distribution& g);

// Restriction of a single global distribution over all measurements to
// every context; non-contextual by construction.
Behaviour behaviour_from_global(const Scenario& scenario, const Distribution& global);

// Deterministic pseudo-random behaviour: per context, integer weights drawn
// uniformly from [0, weight_bound] (re-drawn if all zero) and normalized.
// Generally disturbing.  weight_bound must be at least 1.
Behaviour sample_behaviour(const Scenario& scenario, std::uint64_t seed,
                           std::uint64_t weight_bound);

} // namespace ctxlab

#endif // CTXLAB_BEHAVIOUR_HPP
