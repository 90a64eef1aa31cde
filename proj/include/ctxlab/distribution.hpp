#ifndef CTXLAB_DISTRIBUTION_HPP
#define CTXLAB_DISTRIBUTION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ctxlab/errors.hpp"
#include "ctxlab/rational.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab {

// A probability distribution over tuples of outcomes, one coordinate per
// named variable.  The table is dense, indexed in mixed radix with the first
// coordinate most significant, so walking it in index order enumerates the
// tuples lexicographically.  Entries are exact rationals, nonnegative, and
// sum to one.
class Distribution {
public:
    // Validates: coordinates nonempty and duplicate-free, outcomes sorted
    // unique and nonempty, table of size |outcomes|^|coordinates| with
    // nonnegative entries summing to one.
    Distribution(std::vector<std::string> coordinates,
                 std::vector<OutcomeId> outcomes,
                 std::vector<Rational> table);

    static Distribution point_mass(std::vector<std::string> coordinates,
                                   std::vector<OutcomeId> outcomes,
                                   const std::vector<OutcomeId>& tuple);
    static Distribution uniform(std::vector<std::string> coordinates,
                                std::vector<OutcomeId> outcomes);

    const std::vector<std::string>& coordinates() const { return coordinates_; }
    const std::vector<OutcomeId>& outcomes() const { return outcomes_; }
    const std::vector<Rational>& table() const { return table_; }
    std::size_t size() const { return table_.size(); }

    std::size_t index_of(const std::vector<OutcomeId>& tuple) const;
    std::vector<OutcomeId> tuple_at(std::size_t index) const;

    const Rational& at(const std::vector<OutcomeId>& tuple) const;
    const Rational& at(std::size_t index) const { return table_.at(index); }

    // Full structural equality: coordinates, outcomes, and table.
    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<std::string> coordinates_;
    std::vector<OutcomeId> outcomes_;
    std::vector<Rational> table_;
};

// |outcomes|^|coordinates| with an overflow guard; the size of the dense
// table over that tuple space.
std::size_t tuple_space_size(std::size_t outcome_count, std::size_t coordinate_count);

// True when the two tables match entry for entry over the same outcome set,
// ignoring coordinate names.  This is the equality used between marginals of
// differently named variables (copies of a measurement versus the original).
bool same_table(const Distribution& a, const Distribution& b);

// Marginal onto the coordinates in keep, preserving their relative order in
// the source.  keep must be a nonempty subset of the source coordinates.
Distribution marginalize(const Distribution& source, const std::vector<std::string>& keep);

// Same table under new coordinate names, assigned positionally.
Distribution relabel_coordinates(const Distribution& source,
                                 const std::vector<std::string>& names);

// Reorders coordinates to the given permutation of the source coordinates,
// re-indexing the table accordingly.
Distribution permute_coordinates(const Distribution& source,
                                 const std::vector<std::string>& order);

// A joint distribution together with the single-variable distributions it
// couples.  Invariant: the i-th single-coordinate marginal of the joint has
// the same table as the i-th target (coordinate names are not compared, the
// targets keep their own variable names).
class Coupling {
public:
    const Distribution& joint() const { return joint_; }
    const std::vector<Distribution>& targets() const { return targets_; }

private:
    friend Coupling make_coupling(Distribution joint, std::vector<Distribution> targets);
    Coupling(Distribution joint, std::vector<Distribution> targets)
        : joint_(std::move(joint)), targets_(std::move(targets)) {}

    Distribution joint_;
    std::vector<Distribution> targets_;
};

// Checks the marginal law and packages the pair.
Coupling make_coupling(Distribution joint, std::vector<Distribution> targets);

// The independent coupling: joint(s) = prod_i targets[i](s_i).  Joint
// coordinates take the given names (one per target, duplicate-free); when
// omitted they default to s1..sn.
Coupling product_coupling(const std::vector<Distribution>& targets,
                          const std::vector<std::string>& coordinate_names = {});

// Mass on the diagonal: sum over single outcomes o of joint(o, o, ..., o).
Rational diagonal_mass(const Distribution& joint);
Rational diagonal_mass(const Coupling& coupling);

// Largest diagonal mass any coupling of the targets can attain:
// sum_o min_i targets[i](o).
Rational maximal_coupling_value(const std::vector<Distribution>& targets);

// A coupling attaining maximal_coupling_value: put min_i targets[i](o) on
// each diagonal point, then spread the residuals as an independent product
// scaled by the leftover mass.  The argmin coordinate's residual vanishes at
// each o, so the diagonal keeps exactly the min mass.  For a single target
// this is the target itself under the new coordinate name.
Coupling maximal_coupling(const std::vector<Distribution>& targets,
                          const std::vector<std::string>& coordinate_names = {});

} // namespace ctxlab

#endif // CTXLAB_DISTRIBUTION_HPP
