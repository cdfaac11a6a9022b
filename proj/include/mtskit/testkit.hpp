#pragma once

#include "mtskit/metrics.hpp"
#include "mtskit/system.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mtskit {

/// Parameters for seeded system generation. Generation is a pure function of
/// (params, seed).
struct GenParams {
    int min_states = 1;
    int max_states = 6;
    int min_events = 1;
    int max_events = 3;
    double must_density = 0.18; // probability a (s, e, t) slot is a must
    double may_density = 0.22;  // probability it is a may otherwise
};

/// Deterministic random modal system, trimmed to the reachable part.
PointedSystem random_modal_system(const GenParams &params, uint64_t seed);

/// Deterministic random MPA term over the alphabet, depth and width bounded.
TermRef random_term(const EventAlphabet &alphabet, int max_depth, int max_width, uint64_t seed,
                    TermArena &arena);

/// Refinement decided as an alternating-obligation game with memoized
/// positions, independent of the fixpoint engine. Exact once depth_cap
/// reaches |states| * |states|; throws BudgetError for smaller caps when the
/// verdict is still depth-sensitive.
bool brute_force_refines(const PointedSystem &abstract_side, const PointedSystem &concrete_side,
                         int depth_cap);

/// Distance recomputed from characteristic-formula checks: probe terms are
/// scanned in increasing modal depth and the first disagreeing depth d gives
/// 2^-d; equivalence is certified by the game oracle. Independent of the
/// bounded-refinement chains.
DyadicDistance oracle_distance(const PointedSystem &p, const PointedSystem &q, int depth_cap,
                               size_t budget = 200000);

/// Greedy minimization: delete states, then transitions, while the failure
/// predicate keeps holding.
PointedSystem shrink_system(const PointedSystem &p,
                            const std::function<bool(const PointedSystem &)> &still_fails);

} // namespace mtskit
