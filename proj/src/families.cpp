#include "ctxlab/families.hpp"

#include <algorithm>

namespace ctxlab {

Behaviour prbox_behaviour(std::size_t n) {
    if (n < 4 || n % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "the PR box needs an even cycle length of at least 4");
    }
    Scenario scenario = ncycle_scenario(n);

    Context seam = {"x_0", "x_" + std::to_string(n - 1)};
    std::sort(seam.begin(), seam.end());

    const Rational half = Rational(1) / 2;
    std::vector<Distribution> tables;
    for (const auto& context : scenario.contexts()) {
        // binary pair tables, indices (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3
        std::vector<Rational> table(4, Rational(0));
        if (context == seam) {
            table[1] = half;
            table[2] = half;
        } else {
            table[0] = half;
            table[3] = half;
        }
        tables.emplace_back(context, scenario.outcomes(), std::move(table));
    }
    return make_behaviour(std::move(scenario), std::move(tables));
}

Behaviour counterexample_behaviour() {
    const std::vector<OutcomeId> binary = {"0", "1"};
    const Rational half = Rational(1) / 2;
    const Rational quarter = Rational(1) / 4;

    Distribution p_a({"a"}, binary, {half, half});
    Distribution p_d({"d"}, binary, {half, half});
    Distribution f({"b", "c"}, binary, {half, Rational(0), Rational(0), half});
    Distribution g({"b", "c"}, binary, {quarter, quarter, quarter, quarter});
    return degenerate_counterexample(p_a, p_d, f, g);
}

Behaviour random_cycle_behaviour(std::size_t n, std::uint64_t seed, std::uint64_t weight_bound) {
    return sample_behaviour(ncycle_scenario(n), seed, weight_bound);
}

} // namespace ctxlab
