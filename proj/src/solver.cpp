#include "ctxlab/solver.hpp"

#include <limits>

namespace ctxlab {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

void check_system(const LinearSystem& sys, std::size_t size_cap) {
    if (sys.num_vars > size_cap) {
        throw Error(ErrorCode::ProblemTooLarge,
                    std::to_string(sys.num_vars) + " variables exceed the size cap of " +
                        std::to_string(size_cap));
    }
    for (const auto& eq : sys.equalities) {
        if (eq.coefficients.size() != sys.num_vars) {
            throw Error(ErrorCode::DimensionMismatch,
                        "equality '" + eq.label + "' has " +
                            std::to_string(eq.coefficients.size()) + " coefficients, expected " +
                            std::to_string(sys.num_vars));
        }
    }
}

// Dense exact tableau.  Structural columns first (the original variables,
// or u/v halves when variables are free), then one artificial column per
// row.  rhs is kept nonnegative throughout; flipped records rows negated to
// arrange that, so certificates can be mapped back to the input rows.
struct Tableau {
    std::size_t structural = 0;
    std::size_t art_start = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<std::size_t> basis;
    std::vector<Rational> obj;
    std::vector<bool> banned;
    std::vector<bool> flipped;

    enum class Step { Optimal, Pivoted, Unbounded };

    void pivot(std::size_t r, std::size_t e) {
        const Rational p = rows[r][e];
        if (p == 0) {
            throw Error(ErrorCode::InternalInconsistency, "pivot on a zero entry");
        }
        if (p != 1) {
            for (auto& v : rows[r]) {
                if (v != 0) v /= p;
            }
            rhs[r] /= p;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            const Rational f = rows[i][e];
            if (f == 0) continue;
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
            }
            rhs[i] -= f * rhs[r];
        }
        const Rational f = obj[e];
        if (f != 0) {
            for (std::size_t j = 0; j < obj.size(); ++j) {
                if (rows[r][j] != 0) obj[j] -= f * rows[r][j];
            }
        }
        if (basis[r] >= art_start) banned[basis[r]] = true;
        basis[r] = e;
    }

    // One minimization step under Bland's rule: entering column is the
    // lowest-indexed eligible one with negative reduced cost; leaving row
    // breaks ratio ties by lowest basic index.  Bland's rule forbids
    // cycling, so the loop around this terminates.
    Step min_step() {
        std::size_t e = npos;
        for (std::size_t j = 0; j < obj.size(); ++j) {
            if (!banned[j] && obj[j] < 0) {
                e = j;
                break;
            }
        }
        if (e == npos) return Step::Optimal;

        std::size_t r = npos;
        Rational best = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][e] <= 0) continue;
            Rational ratio = rhs[i] / rows[i][e];
            if (r == npos || ratio < best || (ratio == best && basis[i] < basis[r])) {
                best = ratio;
                r = i;
            }
        }
        if (r == npos) return Step::Unbounded;
        pivot(r, e);
        return Step::Pivoted;
    }
};

Tableau build_phase1(const LinearSystem& sys) {
    const std::size_t n = sys.num_vars;
    const std::size_t m = sys.equalities.size();

    Tableau t;
    t.structural = sys.nonnegative ? n : 2 * n;
    t.art_start = t.structural;
    const std::size_t total = t.structural + m;

    t.rows.assign(m, std::vector<Rational>(total, Rational(0)));
    t.rhs.assign(m, Rational(0));
    t.basis.resize(m);
    t.flipped.assign(m, false);
    t.banned.assign(total, false);

    for (std::size_t i = 0; i < m; ++i) {
        const Equality& eq = sys.equalities[i];
        const bool flip = eq.rhs < 0;
        t.flipped[i] = flip;
        for (std::size_t j = 0; j < n; ++j) {
            Rational a = flip ? -eq.coefficients[j] : eq.coefficients[j];
            if (a == 0) continue;
            t.rows[i][j] = a;
            if (!sys.nonnegative) t.rows[i][n + j] = -a;
        }
        t.rhs[i] = flip ? -eq.rhs : eq.rhs;
        t.rows[i][t.art_start + i] = 1;
        t.basis[i] = t.art_start + i;
    }

    // reduced costs of min(sum of artificials) with the artificial basis
    t.obj.assign(total, Rational(0));
    for (std::size_t j = 0; j < t.structural; ++j) {
        Rational sum = 0;
        for (std::size_t i = 0; i < m; ++i) sum += t.rows[i][j];
        t.obj[j] = -sum;
    }
    return t;
}

// Runs phase one to optimality and returns the residual infeasibility mass
// (zero exactly when the system is feasible).
Rational run_phase1(Tableau& t) {
    while (true) {
        Tableau::Step step = t.min_step();
        if (step == Tableau::Step::Optimal) break;
        if (step == Tableau::Step::Unbounded) {
            throw Error(ErrorCode::InternalInconsistency,
                        "phase one objective is bounded below by zero");
        }
    }
    Rational residual = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.basis[i] >= t.art_start) residual += t.rhs[i];
    }
    return residual;
}

// Farkas multipliers from the phase-one optimum: y_i = 1 - (reduced cost of
// artificial i), then undo the row flips.  For x >= 0 systems y.A <= 0 and
// y.b > 0; for free systems y.A = 0 and y.b > 0.
std::vector<Rational> extract_certificate(const Tableau& t, const LinearSystem& sys) {
    std::vector<Rational> y(sys.equalities.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = Rational(1) - t.obj[t.art_start + i];
        if (t.flipped[i]) y[i] = -y[i];
    }
    return y;
}

void verify_certificate(const LinearSystem& sys, const std::vector<Rational>& y) {
    Rational yb = 0;
    for (std::size_t i = 0; i < sys.equalities.size(); ++i) {
        yb += y[i] * sys.equalities[i].rhs;
    }
    if (yb <= 0) {
        throw Error(ErrorCode::InternalInconsistency,
                    "infeasibility certificate fails: y.b = " + to_fraction(yb));
    }
    for (std::size_t j = 0; j < sys.num_vars; ++j) {
        Rational ya = 0;
        for (std::size_t i = 0; i < sys.equalities.size(); ++i) {
            ya += y[i] * sys.equalities[i].coefficients[j];
        }
        const bool bad = sys.nonnegative ? (ya > 0) : (ya != 0);
        if (bad) {
            throw Error(ErrorCode::InternalInconsistency,
                        "infeasibility certificate fails on column " + std::to_string(j));
        }
    }
}

void verify_point(const LinearSystem& sys, const std::vector<Rational>& x) {
    if (x.size() != sys.num_vars) {
        throw Error(ErrorCode::InternalInconsistency, "witness has the wrong dimension");
    }
    if (sys.nonnegative) {
        for (const auto& v : x) {
            if (v < 0) {
                throw Error(ErrorCode::InternalInconsistency, "witness violates nonnegativity");
            }
        }
    }
    for (const auto& eq : sys.equalities) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < sys.num_vars; ++j) {
            if (eq.coefficients[j] != 0) lhs += eq.coefficients[j] * x[j];
        }
        if (lhs != eq.rhs) {
            throw Error(ErrorCode::InternalInconsistency,
                        "witness violates equality '" + eq.label + "'");
        }
    }
}

// Pivots every basic artificial out of the zero-residual basis, deleting
// rows that turn out redundant.  Degenerate pivots are safe here: such rows
// carry rhs 0.
void drive_out_artificials(Tableau& t) {
    for (std::size_t r = 0; r < t.rows.size();) {
        if (t.basis[r] < t.art_start) {
            ++r;
            continue;
        }
        std::size_t e = npos;
        for (std::size_t j = 0; j < t.structural; ++j) {
            if (t.rows[r][j] != 0) {
                e = j;
                break;
            }
        }
        if (e == npos) {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
            t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
            continue;
        }
        t.pivot(r, e);
        ++r;
    }
    for (std::size_t j = t.art_start; j < t.banned.size(); ++j) t.banned[j] = true;
}

std::vector<Rational> extract_point(const Tableau& t, const LinearSystem& sys) {
    std::vector<Rational> solver_x(t.structural, Rational(0));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.basis[r] < t.structural) solver_x[t.basis[r]] = t.rhs[r];
    }
    if (sys.nonnegative) return solver_x;
    std::vector<Rational> x(sys.num_vars);
    for (std::size_t j = 0; j < sys.num_vars; ++j) {
        x[j] = solver_x[j] - solver_x[sys.num_vars + j];
    }
    return x;
}

} // namespace

SolveOutcome solve_feasibility(const LinearSystem& system, std::size_t size_cap) {
    check_system(system, size_cap);

    Tableau t = build_phase1(system);
    Rational residual = run_phase1(t);

    SolveOutcome outcome;
    if (residual > 0) {
        std::vector<Rational> y = extract_certificate(t, system);
        verify_certificate(system, y);
        outcome.status = SolveStatus::Infeasible;
        outcome.certificate = std::move(y);
        return outcome;
    }

    drive_out_artificials(t);
    std::vector<Rational> x = extract_point(t, system);
    verify_point(system, x);
    outcome.status = SolveStatus::Feasible;
    outcome.witness = std::move(x);
    return outcome;
}

SolveOutcome maximize(const std::vector<Rational>& objective,
                      const LinearSystem& system,
                      std::size_t size_cap) {
    check_system(system, size_cap);
    if (objective.size() != system.num_vars) {
        throw Error(ErrorCode::DimensionMismatch,
                    "objective has " + std::to_string(objective.size()) +
                        " coefficients, expected " + std::to_string(system.num_vars));
    }

    Tableau t = build_phase1(system);
    Rational residual = run_phase1(t);
    if (residual > 0) {
        std::vector<Rational> y = extract_certificate(t, system);
        verify_certificate(system, y);
        throw Error(ErrorCode::InfeasibleRegion, "maximize over an empty region");
    }
    drive_out_artificials(t);

    // phase two: minimize -objective over the feasible basis
    std::vector<Rational> cost(t.structural, Rational(0));
    for (std::size_t j = 0; j < system.num_vars; ++j) {
        cost[j] = -objective[j];
        if (!system.nonnegative) cost[system.num_vars + j] = objective[j];
    }
    t.obj.assign(t.obj.size(), Rational(0));
    for (std::size_t j = 0; j < t.structural; ++j) {
        Rational reduced = cost[j];
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r][j] != 0 && cost[t.basis[r]] != 0) {
                reduced -= cost[t.basis[r]] * t.rows[r][j];
            }
        }
        t.obj[j] = reduced;
    }

    while (true) {
        Tableau::Step step = t.min_step();
        if (step == Tableau::Step::Optimal) break;
        if (step == Tableau::Step::Unbounded) {
            throw Error(ErrorCode::UnboundedObjective, "objective is unbounded above");
        }
    }

    std::vector<Rational> x = extract_point(t, system);
    verify_point(system, x);
    Rational value = 0;
    for (std::size_t j = 0; j < system.num_vars; ++j) {
        if (objective[j] != 0) value += objective[j] * x[j];
    }

    SolveOutcome outcome;
    outcome.status = SolveStatus::Feasible;
    outcome.witness = std::move(x);
    outcome.optimum = std::move(value);
    return outcome;
}

} // namespace ctxlab
