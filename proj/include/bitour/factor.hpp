#pragma once

#include <optional>

#include "bitour/core.hpp"

namespace bitour {

// Either a hamiltonian cycle of the ground set, or a cycle-factor C_1..C_m with
// no arc from C_j to C_i whenever i < j.
struct HMOutcome {
    bool hamiltonian = false;
    CycleFactor cycles;  // exactly one cycle when hamiltonian

    const Cycle& cycle() const { return cycles.front(); }
};

// Spanning cycle-factor of d[ground] via a perfect matching between out-copies
// and in-copies of the ground vertices; nullopt when none exists.
std::optional<CycleFactor> find_cycle_factor(const Digraph& d, Mask ground);

// Exact hamiltonian cycle search by subset dynamic programming (|ground| <= 24).
std::optional<Cycle> hamiltonian_cycle_dp(const Digraph& d, Mask ground);

constexpr int kMergeFallbackLimit = 20;

// One cycle on V(c1) u V(c2), found by splicing along crossing arcs; falls back to
// exact search on small unions. Nullopt only when the union has no hamiltonian cycle.
// Throws Falsification if the splice scan fails on a union too large for the fallback.
std::optional<Cycle> merge_pair(const Digraph& d, const Cycle& c1, const Cycle& c2);

// Merges cycles of `f` (spanning `ground`) until either one cycle remains or the
// cycles are linearly ordered by domination.
HMOutcome hm_normalize(const Digraph& d, Mask ground, const CycleFactor& f);

// Exact check of the ordering property of an Ordered outcome.
bool dominance_ordered(const Digraph& d, const CycleFactor& ordered);

}  // namespace bitour
