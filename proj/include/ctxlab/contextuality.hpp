#ifndef CTXLAB_CONTEXTUALITY_HPP
#define CTXLAB_CONTEXTUALITY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctxlab/behaviour.hpp"
#include "ctxlab/distribution.hpp"
#include "ctxlab/scenario.hpp"
#include "ctxlab/solver.hpp"

namespace ctxlab {

// A distribution over the joint outcomes of all measurements whose
// restriction to every context reproduces the behaviour's table there.
struct GlobalSection {
    Distribution distribution;
};

// Validates the restriction property against b.
GlobalSection make_global_section(const Behaviour& b, Distribution distribution);

// Farkas multipliers paired with the labels of the equalities they combine;
// an exact proof that the feasibility system has no solution.
using LabelledCertificate = std::vector<std::pair<std::string, Rational>>;

struct StandardVerdict {
    bool noncontextual = false;
    std::optional<GlobalSection> global;
    std::optional<LabelledCertificate> certificate;
};

struct ExtendedVerdict {
    bool noncontextual = false;
    std::optional<Distribution> witness;
    std::optional<LabelledCertificate> certificate;
};

// The feasibility system behind the standard verdict: variables are the
// global table over the joint outcomes of all measurements; one
// normalization row plus one marginal-matching row per context and tuple.
LinearSystem standard_nc_system(const Behaviour& b, std::size_t size_cap = kDefaultSizeCap);

// The feasibility system behind the extended verdict: variables are the
// coupling table over the joint outcomes of all measurement copies; one
// normalization row, one matching row per image-context tuple, and one
// diagonal-mass row per connection pinned to that connection's maximal
// coupling value.
LinearSystem extended_nc_system(const Behaviour& b, std::size_t size_cap = kDefaultSizeCap);

// Standard non-contextuality: existence of a global section.
StandardVerdict is_noncontextual_standard(const Behaviour& b,
                                          std::size_t size_cap = kDefaultSizeCap);

// Independent oracle for the same verdict: membership in the convex hull of
// the deterministic behaviours, decided over weights on every point-mass
// global assignment.
bool is_noncontextual_standard_vertex(const Behaviour& b,
                                      std::size_t size_cap = kDefaultSizeCap);

// Extended non-contextuality: existence of a coupling of the behaviour
// whose connection marginals are maximal couplings.
ExtendedVerdict is_noncontextual_extended(const Behaviour& b,
                                          std::size_t size_cap = kDefaultSizeCap);

// A behaviour on the extended scenario certified to extend the base one:
// image tables reproduce the base tables and every connection table is a
// maximal coupling of that measurement's per-context distributions.
class BehaviourExtension {
public:
    const Behaviour& base() const { return base_; }
    const ExtendedScenario& scenario() const { return scenario_; }
    const Behaviour& extended() const { return extended_; }

private:
    friend BehaviourExtension extend_behaviour(const Behaviour& b,
                                               const std::vector<Distribution>& extended_tables);
    BehaviourExtension(Behaviour base, ExtendedScenario scenario, Behaviour extended)
        : base_(std::move(base)), scenario_(std::move(scenario)), extended_(std::move(extended)) {}

    Behaviour base_;
    ExtendedScenario scenario_;
    Behaviour extended_;
};

// Validates extended_tables (aligned with the extended scenario's canonical
// context order) as an extension of b.
BehaviourExtension extend_behaviour(const Behaviour& b,
                                    const std::vector<Distribution>& extended_tables);

// The unique extension of a non-degenerate behaviour: images are the base
// tables and every connection table is the diagonal coupling carrying that
// measurement's single distribution.
BehaviourExtension unique_extension_nondegenerate(const Behaviour& b);

// The trivial lift of a global distribution to the extended tuple space:
// all copies of a measurement move together, mass q(u) on the tuple that
// assigns u(x) to every copy of x, zero elsewhere.
Distribution trivial_extension(const ExtendedScenario& ext, const Distribution& global);

// True when q puts no mass on tuples that separate the copies inside some
// connection; extended witnesses of non-degenerate behaviours must satisfy
// this.
bool vanishes_off_connection_diagonals(const ExtendedScenario& ext, const Distribution& q);

// All four verdicts with witnesses, cross-checked against the inclusion
// laws (standard implies non-disturbing implies non-degenerate; standard
// equals extended plus non-degenerate); a violation raises
// InternalInconsistency since it can only be an artifact bug.
struct ClassificationReport {
    NondegeneracyVerdict ndeg;
    NondisturbanceVerdict nd;
    ExtendedVerdict ncext;
    StandardVerdict nc;
};

ClassificationReport classify(const Behaviour& b, std::size_t size_cap = kDefaultSizeCap);

// H-description of non-disturbance in behaviour-vector coordinates: for
// each intersecting context pair and each overlap tuple but the last, the
// two marginal sums agree.  A behaviour is non-disturbing iff its
// vectorization satisfies the list.
std::vector<Equality> nd_equalities(const Scenario& scenario);

// H-description of non-degeneracy: for each measurement, each consecutive
// pair of its contexts in canonical order, and each outcome but the last,
// the two single-measurement sums agree.
std::vector<Equality> ndeg_equalities(const Scenario& scenario);

// V-description of the standard-non-contextual set: vectorizations of the
// deterministic behaviours, one per global assignment, deduplicated.
std::vector<BehaviourVector> nc_vertices(const Scenario& scenario,
                                         std::size_t size_cap = kDefaultSizeCap);

} // namespace ctxlab

#endif // CTXLAB_CONTEXTUALITY_HPP
