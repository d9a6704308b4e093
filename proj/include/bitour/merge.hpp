#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitour/contraction.hpp"

namespace bitour {

using UnorderedPair = std::pair<Vertex, Vertex>;  // stored with first < second

// Pairs of C^M well connected to the first trailing cycle (W) and from the last one (R).
struct WRAnalysis {
    std::vector<UnorderedPair> w_pairs;  // d+_{C_1}(x) + d+_{C_1}(y) > c_1
    std::vector<UnorderedPair> r_pairs;  // d-_{C_l}(x) + d-_{C_l}(y) > c_l
    int w() const { return static_cast<int>(w_pairs.size()); }
    int r() const { return static_cast<int>(r_pairs.size()); }
    bool in_w(Vertex a, Vertex b) const;
    bool in_r(Vertex a, Vertex b) const;
};

WRAnalysis compute_wr(const ContractedDigraph& cd, const Cycle& c, const Cycle& first, const Cycle& last);

// All pairs {x, x'} of C^M that are white (in W) and whose successors along C^M form
// a pair of R. Ordered by (min, max) id.
std::vector<UnorderedPair> bicolored_pairs(const WRAnalysis& wr, const Cycle& c);
// First bicolored pair; throws Falsification when none exists.
UnorderedPair find_bicolored_pair(const WRAnalysis& wr, const Cycle& c);

// Vertices y, z of `first` with y1 -> y, z1 -> z and exactly `internal` vertices
// strictly inside the path of `first` from y to z.
std::vector<std::pair<Vertex, Vertex>> splices_into_first(const ContractedDigraph& cd, const Cycle& first, Vertex y1,
                                                          Vertex z1, int internal);
// Vertices y', z' of `last` with y' -> y_l, z' -> z_l and exactly `internal` vertices
// strictly inside the path of `last` from z' to y'.
std::vector<std::pair<Vertex, Vertex>> splices_from_last(const ContractedDigraph& cd, const Cycle& last, Vertex yl,
                                                         Vertex zl, int internal);

// Checks e(C, C_1) = c_1 (2k - c_1) and e(C_l, C) = c_l (2k - c_l) in the host, where
// `ordered` lists the remaining cycles dominating each other in order.
std::optional<std::string> arc_count_identity_check(const Tournament& t, const Cycle& c, const CycleFactor& ordered);

// Four host vertices a -> b -> c -> d with the chord a -> d; no F digraph contains this.
using FWitness = std::array<Vertex, 4>;
bool witness_holds(const Digraph& d, const FWitness& w, Mask within);
std::optional<FWitness> find_f_witness(const Digraph& d, Mask within);

struct MergeResult {
    Cycle first;  // length 2p
    Cycle rest;
    std::optional<FWitness> witness;  // set whenever the trailing cycles had to be re-routed
    std::vector<std::string> provenance;
};

// Given a spanning cycle-factor containing `f[index]` of length 2p (2 <= p <= k),
// produces a (2p, 4k-2p)-cycle-factor. Throws Falsification on construction failure.
MergeResult merge_to_two_factor(const Tournament& t, const CycleFactor& f, int index);

}  // namespace bitour
