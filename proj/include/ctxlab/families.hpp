#ifndef CTXLAB_FAMILIES_HPP
#define CTXLAB_FAMILIES_HPP

#include <cstdint>

#include "ctxlab/behaviour.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab {

// The PR box on the binary n-cycle (n even, n >= 4): anti-correlated with
// probability 1/2 per branch on the context joining x_{n-1} and x_0,
// perfectly correlated on every other context.  Non-disturbing with uniform
// single-measurement marginals, yet contextual.
Behaviour prbox_behaviour(std::size_t n = 4);

// The canonical two-context instance separating non-degeneracy from
// non-disturbance: uniform endpoints, f the perfectly correlated joint,
// g the uniform product joint.
Behaviour counterexample_behaviour();

// sample_behaviour on the binary n-cycle.
Behaviour random_cycle_behaviour(std::size_t n, std::uint64_t seed, std::uint64_t weight_bound);

} // namespace ctxlab

#endif // CTXLAB_FAMILIES_HPP
