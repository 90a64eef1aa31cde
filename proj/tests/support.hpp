#ifndef CTXLAB_TESTS_SUPPORT_HPP
#define CTXLAB_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ctxlab/behaviour.hpp"
#include "ctxlab/contextuality.hpp"
#include "ctxlab/distribution.hpp"
#include "ctxlab/scenario.hpp"

// Generators and oracles shared by the test binaries.  Everything here is
// deterministic in the seed and independent of the library's own sampling
// code, so agreement between the two is evidence rather than tautology.
namespace support {

using ctxlab::Behaviour;
using ctxlab::Distribution;
using ctxlab::Equality;
using ctxlab::Rational;
using ctxlab::Scenario;

// Uniform draw from [0, span) by rejection; stable across platforms.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t span) {
    const std::uint64_t max = std::mt19937_64::max();
    const std::uint64_t reject_above = max - max % span;
    for (;;) {
        std::uint64_t v = rng();
        if (v < reject_above) return v % span;
    }
}

// Random rational distribution from integer weights in [floor, bound].
inline Distribution random_distribution(std::mt19937_64& rng,
                                        std::vector<std::string> coordinates,
                                        std::vector<std::string> outcomes,
                                        std::uint64_t bound, bool strictly_positive = false) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < coordinates.size(); ++i) cells *= outcomes.size();
    const std::uint64_t floor = strictly_positive ? 1 : 0;
    std::vector<std::uint64_t> weights(cells);
    std::uint64_t total = 0;
    while (total == 0) {
        total = 0;
        for (auto& w : weights) {
            w = floor + draw(rng, bound - floor + 1);
            total += w;
        }
    }
    std::vector<Rational> table(cells);
    for (std::size_t i = 0; i < cells; ++i) table[i] = Rational(weights[i]) / Rational(total);
    return Distribution(std::move(coordinates), std::move(outcomes), std::move(table));
}

// Random scenario with at most five measurements and three outcomes: a few
// random subsets pruned to the maximal ones, then singletons for anything
// left uncovered, so the anti-chain and cover axioms hold by construction.
inline Scenario random_scenario(std::mt19937_64& rng) {
    const std::size_t nm = 2 + draw(rng, 4);
    const std::size_t no = 2 + draw(rng, 2);

    std::vector<std::uint64_t> masks;
    const std::size_t picks = 1 + draw(rng, 3);
    for (std::size_t i = 0; i < picks; ++i) {
        masks.push_back(1 + draw(rng, (std::uint64_t{1} << nm) - 1));
    }
    std::vector<std::uint64_t> maximal;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < masks.size(); ++j) {
            if (i == j) continue;
            const bool subset = (masks[i] & masks[j]) == masks[i];
            if (subset && (masks[i] != masks[j] || j < i)) keep = false;
        }
        if (keep) maximal.push_back(masks[i]);
    }
    std::uint64_t covered = 0;
    for (auto m : maximal) covered |= m;
    for (std::size_t x = 0; x < nm; ++x) {
        if (!(covered >> x & 1)) maximal.push_back(std::uint64_t{1} << x);
    }

    ctxlab::RawScenario raw;
    for (std::size_t x = 0; x < nm; ++x) raw.measurements.push_back("m" + std::to_string(x));
    for (std::size_t o = 0; o < no; ++o) raw.outcomes.push_back(std::to_string(o));
    for (auto mask : maximal) {
        std::vector<std::string> context;
        for (std::size_t x = 0; x < nm; ++x) {
            if (mask >> x & 1) context.push_back("m" + std::to_string(x));
        }
        raw.contexts.push_back(std::move(context));
    }
    return ctxlab::validate_scenario(raw);
}

inline Behaviour random_global_behaviour(std::mt19937_64& rng, const Scenario& scenario,
                                         std::uint64_t bound = 9) {
    return ctxlab::behaviour_from_global(
        scenario, random_distribution(rng, scenario.measurements(), scenario.outcomes(), bound));
}

// Convex mixture; both behaviours must share a scenario.
inline Behaviour mix(const Behaviour& a, const Behaviour& b, const Rational& lambda) {
    ctxlab::BehaviourVector va = ctxlab::vectorize(a);
    ctxlab::BehaviourVector vb = ctxlab::vectorize(b);
    std::vector<Rational> blended(va.entries.size());
    for (std::size_t i = 0; i < blended.size(); ++i) {
        blended[i] = lambda * va.entries[i] + (1 - lambda) * vb.entries[i];
    }
    return ctxlab::behaviour_from_vector(a.scenario(), blended);
}

// A pair of distinct two-coordinate joints with identical coordinate-wise
// marginals: start from the product of strictly positive marginals, then
// shift mass around a rectangle, which leaves both marginals fixed.
inline std::pair<Distribution, Distribution> marginal_pair(std::mt19937_64& rng,
                                                           std::size_t outcome_count) {
    std::vector<std::string> outcomes;
    for (std::size_t o = 0; o < outcome_count; ++o) outcomes.push_back(std::to_string(o));

    Distribution mb = random_distribution(rng, {"u"}, outcomes, 6, true);
    Distribution mc = random_distribution(rng, {"v"}, outcomes, 6, true);

    const std::size_t k = outcome_count;
    std::vector<Rational> base(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) base[i * k + j] = mb.at(i) * mc.at(j);
    }

    auto shifted = [&](std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2,
                       const Rational& fraction) {
        std::vector<Rational> t = base;
        Rational delta = std::min(t[r1 * k + c2], t[r2 * k + c1]) * fraction;
        t[r1 * k + c1] += delta;
        t[r2 * k + c2] += delta;
        t[r1 * k + c2] -= delta;
        t[r2 * k + c1] -= delta;
        return Distribution({"u", "v"}, outcomes, std::move(t));
    };

    const std::size_t r1 = draw(rng, k - 1);
    const std::size_t r2 = r1 + 1 + draw(rng, k - 1 - r1);
    const std::size_t c1 = draw(rng, k - 1);
    const std::size_t c2 = c1 + 1 + draw(rng, k - 1 - c1);
    Distribution f = shifted(r1, r2, c1, c2, Rational(1) / 2);
    Distribution g =
        draw(rng, 2) == 0 ? shifted(r1, r2, c1, c2, Rational(1) / 4)
                          : Distribution({"u", "v"}, outcomes, base);
    return {std::move(f), std::move(g)};
}

// Anti-correlated triangle: non-disturbing, uniform marginals.
inline Behaviour triangle_anticorrelated() {
    Scenario s = ctxlab::ncycle_scenario(3);
    Rational h = Rational(1) / 2;
    std::vector<Distribution> tables;
    for (const auto& c : s.contexts()) {
        tables.push_back(Distribution(c, s.outcomes(), {0, h, h, 0}));
    }
    return ctxlab::make_behaviour(s, std::move(tables));
}

// Perfectly correlated n-cycle: non-contextual, admits the obvious global.
inline Behaviour correlated_cycle(std::size_t n) {
    Scenario s = ctxlab::ncycle_scenario(n);
    Rational h = Rational(1) / 2;
    std::vector<Distribution> tables;
    for (const auto& c : s.contexts()) {
        tables.push_back(Distribution(c, s.outcomes(), {h, 0, 0, h}));
    }
    return ctxlab::make_behaviour(s, std::move(tables));
}

// Two contexts {a,b}, {b,c} filled with products sharing the middle
// marginal; non-disturbing by construction.
inline Behaviour product_chain(const std::vector<Rational>& pa, const std::vector<Rational>& pb,
                               const std::vector<Rational>& pc,
                               const std::vector<std::string>& outcomes) {
    Scenario s = ctxlab::validate_scenario({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, outcomes});
    const std::size_t k = outcomes.size();
    std::vector<Rational> tab(k * k), tbc(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            tab[i * k + j] = pa[i] * pb[j];
            tbc[i * k + j] = pb[i] * pc[j];
        }
    }
    return ctxlab::make_behaviour(
        s, {Distribution({"a", "b"}, outcomes, std::move(tab)),
            Distribution({"b", "c"}, outcomes, std::move(tbc))});
}

// Exact rank by Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational factor = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
        }
        ++r;
    }
    return r;
}

inline bool satisfies(const Equality& eq, const std::vector<Rational>& point) {
    Rational acc = 0;
    for (std::size_t i = 0; i < eq.coefficients.size(); ++i) {
        acc += eq.coefficients[i] * point[i];
    }
    return acc == eq.rhs;
}

inline bool satisfies_all(const std::vector<Equality>& eqs, const std::vector<Rational>& point) {
    for (const auto& eq : eqs) {
        if (!satisfies(eq, point)) return false;
    }
    return true;
}

} // namespace support

#endif // CTXLAB_TESTS_SUPPORT_HPP
