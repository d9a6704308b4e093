#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "bitour/core.hpp"

namespace bitour {

// Calls `visit` once per directed cycle of d[within] of the given length, each
// cycle starting at its smallest vertex. Stops early when `visit` returns false.
void for_each_cycle(const Digraph& d, Mask within, int length, const std::function<bool(const Cycle&)>& visit);

// Bounded exhaustive search for a (2p, 4k-2p)-cycle-factor: enumerate 2p-cycles
// and test the complement for a hamiltonian cycle (strong + cycle-factor, built
// through hm_normalize). When `avoid_f` is set, first cycles inducing F_{2p} are skipped.
std::optional<std::pair<Cycle, Cycle>> search_two_factor(const Tournament& t, int p, bool avoid_f = false);

// Hamiltonian cycle of a bipartite-tournament subset, or nullopt when none exists.
std::optional<Cycle> hamiltonian_in_bipartite_tournament(const Digraph& d, Mask ground);

}  // namespace bitour
