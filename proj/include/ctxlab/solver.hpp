#ifndef CTXLAB_SOLVER_HPP
#define CTXLAB_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ctxlab/errors.hpp"
#include "ctxlab/rational.hpp"

namespace ctxlab {

// One equality row: coefficients . x = rhs.  The label is a stable
// provenance tag carried into serialized witnesses and certificates.
struct Equality {
    std::vector<Rational> coefficients;
    Rational rhs;
    std::string label;
};

// A x = b, with x >= 0 when nonnegative is set and x free otherwise.
// Inequalities do not occur in this artifact; every formulation is
// marginal matching over a simplex.
struct LinearSystem {
    std::size_t num_vars = 0;
    std::vector<Equality> equalities;
    bool nonnegative = true;
};

enum class SolveStatus { Feasible, Infeasible };

// Feasible: witness is a satisfying point (and optimum the objective value
// when produced by maximize).  Infeasible: certificate holds Farkas
// multipliers y, one per equality, with y.A <= 0 componentwise (== 0 for
// free-variable systems) and y.b > 0, an exact proof that no solution
// exists.  Both are re-verified by substitution before being returned.
struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<std::vector<Rational>> witness;
    std::optional<Rational> optimum;
    std::optional<std::vector<Rational>> certificate;
};

// Refuse systems with more variables than this unless overridden; the
// tuple spaces behind these systems grow exponentially and should fail
// loudly rather than thrash.
inline constexpr std::size_t kDefaultSizeCap = 2'000'000;

// Exact feasibility via two-phase dense simplex with Bland's rule.
SolveOutcome solve_feasibility(const LinearSystem& system,
                               std::size_t size_cap = kDefaultSizeCap);

// Exact maximum of objective . x over the system's solutions.  Throws
// InfeasibleRegion when there are none and UnboundedObjective when the
// objective is unbounded above.
SolveOutcome maximize(const std::vector<Rational>& objective,
                      const LinearSystem& system,
                      std::size_t size_cap = kDefaultSizeCap);

} // namespace ctxlab

#endif // CTXLAB_SOLVER_HPP
