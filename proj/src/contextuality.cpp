#include "ctxlab/contextuality.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace ctxlab {

namespace {

// place[i] = k^(count-1-i): digit i of a mixed-radix index, first
// coordinate most significant.
std::vector<std::size_t> msb_places(std::size_t count, std::size_t k) {
    std::vector<std::size_t> place(count);
    std::size_t scale = 1;
    for (std::size_t i = count; i-- > 0;) {
        place[i] = scale;
        scale *= k;
    }
    return place;
}

std::size_t position_in(const std::vector<std::string>& sorted_names, const std::string& name) {
    auto it = std::lower_bound(sorted_names.begin(), sorted_names.end(), name);
    if (it == sorted_names.end() || *it != name) {
        throw Error(ErrorCode::InternalInconsistency, "name '" + name + "' lost during indexing");
    }
    return static_cast<std::size_t>(it - sorted_names.begin());
}

std::string tuple_label(const Scenario& scenario, std::size_t tuple_index, std::size_t width) {
    const std::size_t k = scenario.outcomes().size();
    std::vector<std::size_t> digits(width);
    for (std::size_t i = width; i-- > 0;) {
        digits[i] = tuple_index % k;
        tuple_index /= k;
    }
    std::string label;
    for (std::size_t i = 0; i < width; ++i) {
        if (i > 0) label += ',';
        label += scenario.outcomes()[digits[i]];
    }
    return label;
}

LabelledCertificate label_certificate(const LinearSystem& sys, const std::vector<Rational>& y) {
    LabelledCertificate out;
    out.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out.emplace_back(sys.equalities[i].label, y[i]);
    }
    return out;
}

} // namespace

GlobalSection make_global_section(const Behaviour& b, Distribution distribution) {
    Behaviour restricted = behaviour_from_global(b.scenario(), distribution);
    if (!(restricted == b)) {
        throw Error(ErrorCode::MarginalMismatch,
                    "distribution does not restrict to the behaviour's tables");
    }
    return GlobalSection{std::move(distribution)};
}

LinearSystem standard_nc_system(const Behaviour& b, std::size_t size_cap) {
    const Scenario& sc = b.scenario();
    const std::size_t k = sc.outcomes().size();
    const std::size_t n = tuple_space_size(k, sc.measurements().size());
    if (n > size_cap) {
        throw Error(ErrorCode::ProblemTooLarge,
                    "global table needs " + std::to_string(n) + " cells, cap is " +
                        std::to_string(size_cap));
    }
    const std::vector<std::size_t> place = msb_places(sc.measurements().size(), k);

    LinearSystem sys;
    sys.num_vars = n;
    sys.nonnegative = true;

    Equality norm;
    norm.coefficients.assign(n, Rational(1));
    norm.rhs = 1;
    norm.label = "normalization";
    sys.equalities.push_back(std::move(norm));

    for (std::size_t ci = 0; ci < sc.contexts().size(); ++ci) {
        const Context& context = sc.contexts()[ci];
        std::vector<std::size_t> pos(context.size());
        for (std::size_t j = 0; j < context.size(); ++j) {
            pos[j] = position_in(sc.measurements(), context[j]);
        }
        const std::size_t block = tuple_space_size(k, context.size());
        const std::size_t first_row = sys.equalities.size();
        for (std::size_t s = 0; s < block; ++s) {
            Equality eq;
            eq.coefficients.assign(n, Rational(0));
            eq.rhs = b.tables()[ci].at(s);
            eq.label = "match:{" + context_key(context) + "}:" + tuple_label(sc, s, context.size());
            sys.equalities.push_back(std::move(eq));
        }
        for (std::size_t u = 0; u < n; ++u) {
            std::size_t s = 0;
            for (std::size_t j = 0; j < context.size(); ++j) {
                s = s * k + (u / place[pos[j]]) % k;
            }
            sys.equalities[first_row + s].coefficients[u] = 1;
        }
    }
    return sys;
}

StandardVerdict is_noncontextual_standard(const Behaviour& b, std::size_t size_cap) {
    LinearSystem sys = standard_nc_system(b, size_cap);
    SolveOutcome outcome = solve_feasibility(sys, size_cap);

    StandardVerdict verdict;
    if (outcome.status == SolveStatus::Feasible) {
        verdict.noncontextual = true;
        Distribution global(b.scenario().measurements(), b.scenario().outcomes(),
                            std::move(*outcome.witness));
        verdict.global = make_global_section(b, std::move(global));
    } else {
        verdict.noncontextual = false;
        verdict.certificate = label_certificate(sys, *outcome.certificate);
    }
    return verdict;
}

bool is_noncontextual_standard_vertex(const Behaviour& b, std::size_t size_cap) {
    std::vector<BehaviourVector> vertices = nc_vertices(b.scenario(), size_cap);
    BehaviourVector target = vectorize(b);
    const std::size_t n = vertices.size();

    LinearSystem sys;
    sys.num_vars = n;
    sys.nonnegative = true;

    Equality norm;
    norm.coefficients.assign(n, Rational(1));
    norm.rhs = 1;
    norm.label = "normalization";
    sys.equalities.push_back(std::move(norm));

    for (std::size_t t = 0; t < target.entries.size(); ++t) {
        Equality eq;
        eq.coefficients.reserve(n);
        for (std::size_t w = 0; w < n; ++w) {
            eq.coefficients.push_back(vertices[w].entries[t]);
        }
        eq.rhs = target.entries[t];
        eq.label = "coordinate:" + std::to_string(t);
        sys.equalities.push_back(std::move(eq));
    }
    return solve_feasibility(sys, size_cap).status == SolveStatus::Feasible;
}

LinearSystem extended_nc_system(const Behaviour& b, std::size_t size_cap) {
    const Scenario& sc = b.scenario();
    const ExtendedScenario ext = extend_scenario(sc);
    const Scenario& full = ext.full();
    const std::size_t k = sc.outcomes().size();
    const std::size_t n = tuple_space_size(k, full.measurements().size());
    if (n > size_cap) {
        throw Error(ErrorCode::ProblemTooLarge,
                    "coupling table needs " + std::to_string(n) + " cells, cap is " +
                        std::to_string(size_cap));
    }
    const std::vector<std::size_t> place = msb_places(full.measurements().size(), k);

    LinearSystem sys;
    sys.num_vars = n;
    sys.nonnegative = true;

    Equality norm;
    norm.coefficients.assign(n, Rational(1));
    norm.rhs = 1;
    norm.label = "normalization";
    sys.equalities.push_back(std::move(norm));

    for (std::size_t ci = 0; ci < sc.contexts().size(); ++ci) {
        const Context& context = sc.contexts()[ci];
        std::vector<std::size_t> pos(context.size());
        for (std::size_t j = 0; j < context.size(); ++j) {
            pos[j] = position_in(full.measurements(), ExtendedScenario::tag(context[j], ci));
        }
        const std::size_t block = tuple_space_size(k, context.size());
        const std::size_t first_row = sys.equalities.size();
        for (std::size_t s = 0; s < block; ++s) {
            Equality eq;
            eq.coefficients.assign(n, Rational(0));
            eq.rhs = b.tables()[ci].at(s);
            eq.label = "image:{" + context_key(context) + "}:" + tuple_label(sc, s, context.size());
            sys.equalities.push_back(std::move(eq));
        }
        for (std::size_t u = 0; u < n; ++u) {
            std::size_t s = 0;
            for (std::size_t j = 0; j < context.size(); ++j) {
                s = s * k + (u / place[pos[j]]) % k;
            }
            sys.equalities[first_row + s].coefficients[u] = 1;
        }
    }

    for (const auto& [x, connection] : ext.connections()) {
        std::vector<std::size_t> pos(connection.size());
        for (std::size_t j = 0; j < connection.size(); ++j) {
            pos[j] = position_in(full.measurements(), connection[j]);
        }
        std::vector<Distribution> targets;
        for (const auto& c : contexts_of(sc, x)) {
            targets.push_back(point_distribution(b, c, x));
        }

        Equality eq;
        eq.coefficients.assign(n, Rational(0));
        eq.rhs = maximal_coupling_value(targets);
        eq.label = "connection:" + x;
        for (std::size_t u = 0; u < n; ++u) {
            const std::size_t first = (u / place[pos[0]]) % k;
            bool constant = true;
            for (std::size_t j = 1; j < connection.size(); ++j) {
                if ((u / place[pos[j]]) % k != first) {
                    constant = false;
                    break;
                }
            }
            if (constant) eq.coefficients[u] = 1;
        }
        sys.equalities.push_back(std::move(eq));
    }
    return sys;
}

ExtendedVerdict is_noncontextual_extended(const Behaviour& b, std::size_t size_cap) {
    LinearSystem sys = extended_nc_system(b, size_cap);
    SolveOutcome outcome = solve_feasibility(sys, size_cap);

    ExtendedVerdict verdict;
    if (outcome.status == SolveStatus::Feasible) {
        verdict.noncontextual = true;
        const ExtendedScenario ext = extend_scenario(b.scenario());
        verdict.witness = Distribution(ext.full().measurements(), b.scenario().outcomes(),
                                       std::move(*outcome.witness));
    } else {
        verdict.noncontextual = false;
        verdict.certificate = label_certificate(sys, *outcome.certificate);
    }
    return verdict;
}

BehaviourExtension extend_behaviour(const Behaviour& b,
                                    const std::vector<Distribution>& extended_tables) {
    ExtendedScenario ext = extend_scenario(b.scenario());
    Behaviour extended = make_behaviour(ext.full(), extended_tables);

    for (std::size_t ci = 0; ci < b.scenario().contexts().size(); ++ci) {
        const Context& context = b.scenario().contexts()[ci];
        const Distribution& image = extended.tables()[ext.image_position(ci)];
        std::vector<std::string> tag_order;
        for (const auto& x : context) {
            tag_order.push_back(ExtendedScenario::tag(x, ci));
        }
        Distribution mapped = relabel_coordinates(permute_coordinates(image, tag_order), context);
        if (!(mapped == b.tables()[ci])) {
            throw Error(ErrorCode::ImageMismatch,
                        "image table of {" + context_key(context) +
                            "} does not reproduce the base table");
        }
    }

    for (const auto& [x, connection] : ext.connections()) {
        const Distribution& q = extended.tables()[ext.connection_position(x)];
        std::vector<Context> through = contexts_of(b.scenario(), x);
        std::vector<Distribution> targets;
        for (const auto& c : through) {
            targets.push_back(point_distribution(b, c, x));
        }
        for (std::size_t i = 0; i < through.size(); ++i) {
            const std::string tag =
                ExtendedScenario::tag(x, *b.scenario().context_position(through[i]));
            Distribution marginal = marginalize(q, {tag});
            if (marginal.table() != targets[i].table()) {
                throw Error(ErrorCode::NotMaximalCoupling,
                            "connection table of '" + x + "' does not couple p_" + x +
                                " from context {" + context_key(through[i]) + "}");
            }
        }
        if (diagonal_mass(q) != maximal_coupling_value(targets)) {
            throw Error(ErrorCode::NotMaximalCoupling,
                        "connection table of '" + x + "' has diagonal mass " +
                            to_fraction(diagonal_mass(q)) + ", maximal is " +
                            to_fraction(maximal_coupling_value(targets)));
        }
    }
    return BehaviourExtension(b, std::move(ext), std::move(extended));
}

BehaviourExtension unique_extension_nondegenerate(const Behaviour& b) {
    if (!is_nondegenerate(b).nondegenerate) {
        throw Error(ErrorCode::DegenerateBehaviour,
                    "only non-degenerate behaviours have a canonical extension");
    }
    ExtendedScenario ext = extend_scenario(b.scenario());
    const std::size_t k = b.scenario().outcomes().size();

    std::vector<std::optional<Distribution>> slots(ext.full().contexts().size());
    for (std::size_t ci = 0; ci < b.scenario().contexts().size(); ++ci) {
        const Context& context = b.scenario().contexts()[ci];
        std::vector<std::string> tag_order;
        for (const auto& x : context) {
            tag_order.push_back(ExtendedScenario::tag(x, ci));
        }
        Distribution image = permute_coordinates(
            relabel_coordinates(b.tables()[ci], tag_order),
            ext.full().contexts()[ext.image_position(ci)]);
        slots[ext.image_position(ci)] = std::move(image);
    }
    for (const auto& [x, connection] : ext.connections()) {
        Distribution p_x = point_distribution(b, contexts_of(b.scenario(), x)[0], x);
        std::vector<Rational> table(tuple_space_size(k, connection.size()), Rational(0));
        for (std::size_t o = 0; o < k; ++o) {
            std::size_t index = 0;
            for (std::size_t j = 0; j < connection.size(); ++j) index = index * k + o;
            table[index] = p_x.at(o);
        }
        slots[ext.connection_position(x)] =
            Distribution(connection, b.scenario().outcomes(), std::move(table));
    }

    std::vector<Distribution> tables;
    tables.reserve(slots.size());
    for (auto& slot : slots) {
        if (!slot) {
            throw Error(ErrorCode::InternalInconsistency, "extended context left without a table");
        }
        tables.push_back(std::move(*slot));
    }
    return extend_behaviour(b, tables);
}

Distribution trivial_extension(const ExtendedScenario& ext, const Distribution& global) {
    const Scenario& base = ext.base();
    const Scenario& full = ext.full();
    if (global.coordinates() != base.measurements()) {
        throw Error(ErrorCode::CoordinateMismatch,
                    "global distribution must range over the base measurements");
    }
    const std::size_t k = global.outcomes().size();
    const std::size_t width = full.measurements().size();
    const std::size_t n = tuple_space_size(k, width);
    constexpr std::size_t unset = static_cast<std::size_t>(-1);

    std::vector<std::size_t> base_position(width);
    for (std::size_t j = 0; j < width; ++j) {
        base_position[j] = position_in(base.measurements(),
                                       ext.split_tag(full.measurements()[j]).first);
    }

    std::vector<Rational> table(n, Rational(0));
    std::vector<std::size_t> digits(width);
    std::vector<std::size_t> assignment(base.measurements().size());
    for (std::size_t index = 0; index < n; ++index) {
        std::size_t rest = index;
        for (std::size_t j = width; j-- > 0;) {
            digits[j] = rest % k;
            rest /= k;
        }
        assignment.assign(base.measurements().size(), unset);
        bool consistent = true;
        for (std::size_t j = 0; j < width && consistent; ++j) {
            std::size_t& slot = assignment[base_position[j]];
            if (slot == unset) {
                slot = digits[j];
            } else if (slot != digits[j]) {
                consistent = false;
            }
        }
        if (!consistent) continue;
        std::size_t u = 0;
        for (std::size_t p = 0; p < assignment.size(); ++p) {
            u = u * k + assignment[p];
        }
        table[index] = global.at(u);
    }
    return Distribution(full.measurements(), global.outcomes(), std::move(table));
}

bool vanishes_off_connection_diagonals(const ExtendedScenario& ext, const Distribution& q) {
    const Scenario& full = ext.full();
    if (q.coordinates() != full.measurements()) {
        throw Error(ErrorCode::CoordinateMismatch,
                    "witness must range over the extended measurements");
    }
    const std::size_t k = q.outcomes().size();
    const std::vector<std::size_t> place = msb_places(full.measurements().size(), k);

    std::vector<std::vector<std::size_t>> connection_positions;
    for (const auto& [x, connection] : ext.connections()) {
        std::vector<std::size_t> pos;
        for (const auto& tag : connection) {
            pos.push_back(position_in(full.measurements(), tag));
        }
        connection_positions.push_back(std::move(pos));
    }

    for (std::size_t index = 0; index < q.size(); ++index) {
        if (q.at(index) == 0) continue;
        for (const auto& pos : connection_positions) {
            const std::size_t first = (index / place[pos[0]]) % k;
            for (std::size_t j = 1; j < pos.size(); ++j) {
                if ((index / place[pos[j]]) % k != first) return false;
            }
        }
    }
    return true;
}

ClassificationReport classify(const Behaviour& b, std::size_t size_cap) {
    ClassificationReport report{
        is_nondegenerate(b),
        is_nondisturbing(b),
        is_noncontextual_extended(b, size_cap),
        is_noncontextual_standard(b, size_cap),
    };

    if (report.nc.noncontextual && !report.nd.nondisturbing) {
        throw Error(ErrorCode::InternalInconsistency,
                    "standard non-contextuality without non-disturbance");
    }
    if (report.nd.nondisturbing && !report.ndeg.nondegenerate) {
        throw Error(ErrorCode::InternalInconsistency,
                    "non-disturbance without non-degeneracy");
    }
    if (report.nc.noncontextual != (report.ncext.noncontextual && report.ndeg.nondegenerate)) {
        throw Error(ErrorCode::InternalInconsistency,
                    "standard verdict disagrees with extended verdict plus non-degeneracy");
    }
    return report;
}

std::vector<Equality> nd_equalities(const Scenario& scenario) {
    const std::size_t N = vector_length(scenario);
    const std::vector<std::size_t> offsets = context_offsets(scenario);
    const std::size_t k = scenario.outcomes().size();

    std::vector<Equality> list;
    for (std::size_t i = 0; i < scenario.contexts().size(); ++i) {
        for (std::size_t j = i + 1; j < scenario.contexts().size(); ++j) {
            const Context& ca = scenario.contexts()[i];
            const Context& cb = scenario.contexts()[j];
            std::vector<MeasurementId> overlap;
            std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                                  std::back_inserter(overlap));
            if (overlap.empty()) continue;

            std::vector<std::size_t> pos_a(overlap.size()), pos_b(overlap.size());
            for (std::size_t t = 0; t < overlap.size(); ++t) {
                pos_a[t] = position_in(ca, overlap[t]);
                pos_b[t] = position_in(cb, overlap[t]);
            }
            const std::vector<std::size_t> place_a = msb_places(ca.size(), k);
            const std::vector<std::size_t> place_b = msb_places(cb.size(), k);
            const std::size_t block_a = tuple_space_size(k, ca.size());
            const std::size_t block_b = tuple_space_size(k, cb.size());
            const std::size_t overlap_block = tuple_space_size(k, overlap.size());

            for (std::size_t r = 0; r + 1 < overlap_block; ++r) {
                Equality eq;
                eq.coefficients.assign(N, Rational(0));
                eq.rhs = 0;
                eq.label = "nd:{" + context_key(ca) + "}|{" + context_key(cb) + "}:" +
                           tuple_label(scenario, r, overlap.size());
                for (std::size_t s = 0; s < block_a; ++s) {
                    std::size_t rs = 0;
                    for (std::size_t t = 0; t < overlap.size(); ++t) {
                        rs = rs * k + (s / place_a[pos_a[t]]) % k;
                    }
                    if (rs == r) eq.coefficients[offsets[i] + s] += 1;
                }
                for (std::size_t s = 0; s < block_b; ++s) {
                    std::size_t rs = 0;
                    for (std::size_t t = 0; t < overlap.size(); ++t) {
                        rs = rs * k + (s / place_b[pos_b[t]]) % k;
                    }
                    if (rs == r) eq.coefficients[offsets[j] + s] -= 1;
                }
                list.push_back(std::move(eq));
            }
        }
    }
    return list;
}

std::vector<Equality> ndeg_equalities(const Scenario& scenario) {
    const std::size_t N = vector_length(scenario);
    const std::vector<std::size_t> offsets = context_offsets(scenario);
    const std::size_t k = scenario.outcomes().size();

    std::vector<Equality> list;
    for (const auto& x : scenario.measurements()) {
        std::vector<Context> through = contexts_of(scenario, x);
        for (std::size_t c = 0; c + 1 < through.size(); ++c) {
            const Context& ca = through[c];
            const Context& cb = through[c + 1];
            const std::size_t ia = *scenario.context_position(ca);
            const std::size_t ib = *scenario.context_position(cb);
            const std::size_t pa = position_in(ca, x);
            const std::size_t pb = position_in(cb, x);
            const std::vector<std::size_t> place_a = msb_places(ca.size(), k);
            const std::vector<std::size_t> place_b = msb_places(cb.size(), k);
            const std::size_t block_a = tuple_space_size(k, ca.size());
            const std::size_t block_b = tuple_space_size(k, cb.size());

            for (std::size_t o = 0; o + 1 < k; ++o) {
                Equality eq;
                eq.coefficients.assign(N, Rational(0));
                eq.rhs = 0;
                eq.label = "ndeg:" + x + ":{" + context_key(ca) + "}|{" + context_key(cb) +
                           "}:" + scenario.outcomes()[o];
                for (std::size_t s = 0; s < block_a; ++s) {
                    if ((s / place_a[pa]) % k == o) eq.coefficients[offsets[ia] + s] += 1;
                }
                for (std::size_t s = 0; s < block_b; ++s) {
                    if ((s / place_b[pb]) % k == o) eq.coefficients[offsets[ib] + s] -= 1;
                }
                list.push_back(std::move(eq));
            }
        }
    }
    return list;
}

std::vector<BehaviourVector> nc_vertices(const Scenario& scenario, std::size_t size_cap) {
    const std::size_t k = scenario.outcomes().size();
    const std::size_t n = tuple_space_size(k, scenario.measurements().size());
    if (n > size_cap) {
        throw Error(ErrorCode::ProblemTooLarge,
                    std::to_string(n) + " global assignments exceed the size cap of " +
                        std::to_string(size_cap));
    }

    std::vector<BehaviourVector> vertices;
    std::set<std::vector<Rational>> seen;
    std::vector<OutcomeId> tuple(scenario.measurements().size());
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t rest = u;
        for (std::size_t j = tuple.size(); j-- > 0;) {
            tuple[j] = scenario.outcomes()[rest % k];
            rest /= k;
        }
        Distribution global = Distribution::point_mass(scenario.measurements(),
                                                       scenario.outcomes(), tuple);
        BehaviourVector v = vectorize(behaviour_from_global(scenario, global));
        if (seen.insert(v.entries).second) {
            vertices.push_back(std::move(v));
        }
    }
    return vertices;
}

} // namespace ctxlab
