#pragma once

#include <string>
#include <vector>

#include "bitour/contraction.hpp"

namespace bitour {

// u_1..u_t (t >= 2) with u_i u_{i+1} (indices cyclic) never an arc of the contracted digraph.
struct AntiCycle {
    std::vector<Vertex> vertices;
    int length() const { return static_cast<int>(vertices.size()); }
};

std::string anti_cycle_defect(const ContractedDigraph& cd, const AntiCycle& ac);

// M' = M with M'(u_{i+1}) = M(u_i) and M'(u_1) = M(u_t). Throws std::invalid_argument
// on an invalid anti-cycle. When `log` is given, appends a replayable entry.
PerfectMatching switch_matching(const PerfectMatching& m, const ContractedDigraph& cd, const AntiCycle& ac,
                                std::vector<std::string>* log = nullptr);

// Image of a cycle-factor of D^M after the switch: u_i's successor becomes the old
// successor of u_{i-1}; every other successor is kept.
CycleFactor switch_factor(const CycleFactor& f, const AntiCycle& ac, const ContractedDigraph& cd);

std::string switch_log_line(const PerfectMatching& m, const AntiCycle& ac);

}  // namespace bitour
