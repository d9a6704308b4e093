#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bitour/core.hpp"

namespace bitour {

// Up matchings use arcs S -> T, Down matchings use arcs T -> S.
enum class Direction { Up, Down };

inline Direction opposite(Direction d) { return d == Direction::Up ? Direction::Down : Direction::Up; }
inline const char* to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

// Side whose vertices become the vertices of the contracted digraph.
Mask source_side(const Tournament& t, Direction dir);

struct PerfectMatching {
    Direction direction = Direction::Up;
    std::vector<Vertex> partner;  // partner[u] = M(u) for u on the source side, -1 elsewhere
    std::vector<Vertex> inverse;  // inverse[M(u)] = u

    Vertex operator()(Vertex u) const { return partner[u]; }
    Mask image(Mask set) const;
    bool operator==(const PerfectMatching&) const = default;
};

// Builds a matching from the partner map (inverse filled in).
PerfectMatching make_matching(int n, Direction dir, const std::vector<std::pair<Vertex, Vertex>>& pairs);

// Empty string iff `m` is a perfect matching of `t` using arcs in its direction.
std::string matching_defect(const Tournament& t, const PerfectMatching& m);

PerfectMatching find_matching(const Tournament& t, Direction dir);

// "u>v" pairs separated by spaces, ascending u.
std::string format_matching(const PerfectMatching& m);

// D^M on the source side, vertices keep their host ids: u -> v iff M(u) -> v in the host.
struct ContractedDigraph {
    const Tournament* base = nullptr;
    PerfectMatching matching;
    Digraph digraph;
    Mask vertices = 0;

    bool arc(Vertex u, Vertex v) const { return digraph.arc(u, v); }
};

ContractedDigraph contract(const Tournament& t, const PerfectMatching& m);

// u_1..u_t in D^M  ->  u_1, M(u_1), ..., u_t, M(u_t) in the host.
Cycle lift(const ContractedDigraph& cd, const Cycle& c);
CycleFactor lift(const ContractedDigraph& cd, const CycleFactor& f);

// Inverse of lift: a host cycle in which every source vertex is followed by its mate.
Cycle contract_cycle(const ContractedDigraph& cd, const Cycle& host_cycle);
CycleFactor contract_factor(const ContractedDigraph& cd, const CycleFactor& host_factor);

// The arcs of a spanning host factor leaving the source side of `dir`.
PerfectMatching factor_matching(const Tournament& t, const CycleFactor& f, Direction dir);
std::pair<PerfectMatching, PerfectMatching> factor_matchings(const Tournament& t, const CycleFactor& f);

}  // namespace bitour
