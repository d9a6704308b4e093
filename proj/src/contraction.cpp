#include "bitour/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitour {

Mask source_side(const Tournament& t, Direction dir) { return dir == Direction::Up ? t.side_s() : t.side_t(); }

Mask PerfectMatching::image(Mask set) const {
    Mask out = 0;
    for (Vertex u : members(set)) out |= bit(partner[u]);
    return out;
}

PerfectMatching make_matching(int n, Direction dir, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    PerfectMatching m;
    m.direction = dir;
    m.partner.assign(n, -1);
    m.inverse.assign(n, -1);
    for (auto [u, v] : pairs) {
        m.partner[u] = v;
        m.inverse[v] = u;
    }
    return m;
}

std::string matching_defect(const Tournament& t, const PerfectMatching& m) {
    if (static_cast<int>(m.partner.size()) != t.n() || static_cast<int>(m.inverse.size()) != t.n())
        return "matching tables have wrong size";
    const Mask src = source_side(t, m.direction), dst = t.other_side(src);
    Mask hit = 0;
    for (Vertex u : members(src)) {
        Vertex v = m.partner[u];
        if (v < 0 || !has(dst, v)) return "vertex " + std::to_string(u) + " unmatched";
        if (has(hit, v)) return "vertex " + std::to_string(v) + " matched twice";
        if (!t.arc(u, v)) return "pair " + std::to_string(u) + ">" + std::to_string(v) + " is not an arc";
        if (m.inverse[v] != u) return "inverse table disagrees at " + std::to_string(v);
        hit |= bit(v);
    }
    for (Vertex v : members(dst))
        if (m.partner[v] != -1) return "target vertex " + std::to_string(v) + " has a partner entry";
    return {};
}

PerfectMatching find_matching(const Tournament& t, Direction dir) {
    const Mask src = source_side(t, dir), dst = t.other_side(src);
    const Digraph& d = t.digraph();
    const int n = t.n();
    std::vector<Vertex> mate_of_dst(n, -1), mate_of_src(n, -1);
    // Greedy seed in ascending order.
    for (Vertex u : members(src)) {
        Mask free = d.out(u) & dst;
        for (Vertex v : members(free))
            if (mate_of_dst[v] == -1) {
                mate_of_dst[v] = u;
                mate_of_src[u] = v;
                break;
            }
    }
    // Augmenting paths (Kuhn) for whatever the greedy pass left unmatched.
    for (Vertex root : members(src)) {
        if (mate_of_src[root] != -1) continue;
        Mask visited = 0;
        auto augment = [&](auto&& self, Vertex u) -> bool {
            for (Vertex v : members(d.out(u) & dst & ~visited)) {
                visited |= bit(v);
                if (mate_of_dst[v] == -1 || self(self, mate_of_dst[v])) {
                    mate_of_dst[v] = u;
                    mate_of_src[u] = v;
                    return true;
                }
            }
            return false;
        };
        if (!augment(augment, root))
            throw std::logic_error("no perfect matching in a regular bipartite tournament (input was not validated?)");
    }
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u : members(src)) pairs.emplace_back(u, mate_of_src[u]);
    return make_matching(n, dir, pairs);
}

std::string format_matching(const PerfectMatching& m) {
    std::string s;
    for (Vertex u = 0; u < static_cast<int>(m.partner.size()); ++u) {
        if (m.partner[u] < 0) continue;
        if (!s.empty()) s += ' ';
        s += std::to_string(u) + ">" + std::to_string(m.partner[u]);
    }
    return s;
}

ContractedDigraph contract(const Tournament& t, const PerfectMatching& m) {
    if (auto defect = matching_defect(t, m); !defect.empty())
        throw std::invalid_argument("contract: matching invalid for tournament: " + defect);
    ContractedDigraph cd;
    cd.base = &t;
    cd.matching = m;
    cd.vertices = source_side(t, m.direction);
    cd.digraph = Digraph(t.n());
    for (Vertex u : members(cd.vertices))
        for (Vertex v : members(t.digraph().out(m.partner[u]) & cd.vertices)) cd.digraph.add_arc(u, v);
    return cd;
}

Cycle lift(const ContractedDigraph& cd, const Cycle& c) {
    if (auto defect = cycle_defect(cd.digraph, c); !defect.empty())
        throw std::invalid_argument("lift: not a cycle of the contracted digraph: " + defect);
    Cycle out;
    for (Vertex u : c.vertices) {
        out.vertices.push_back(u);
        out.vertices.push_back(cd.matching.partner[u]);
    }
    return out;
}

CycleFactor lift(const ContractedDigraph& cd, const CycleFactor& f) {
    CycleFactor out;
    for (const Cycle& c : f) out.push_back(lift(cd, c));
    return out;
}

Cycle contract_cycle(const ContractedDigraph& cd, const Cycle& host_cycle) {
    Cycle out;
    for (int i = 0; i < host_cycle.length(); ++i) {
        Vertex u = host_cycle.at(i);
        if (!has(cd.vertices, u)) continue;
        if (cd.matching.partner[u] != host_cycle.at(i + 1))
            throw std::invalid_argument("contract_cycle: vertex " + std::to_string(u) + " not followed by its mate");
        out.vertices.push_back(u);
    }
    return out;
}

CycleFactor contract_factor(const ContractedDigraph& cd, const CycleFactor& host_factor) {
    CycleFactor out;
    for (const Cycle& c : host_factor) out.push_back(contract_cycle(cd, c));
    return out;
}

PerfectMatching factor_matching(const Tournament& t, const CycleFactor& f, Direction dir) {
    if (!is_cycle_factor(t.digraph(), f, t.digraph().all()))
        throw std::invalid_argument("factor_matching: factor does not span the tournament");
    auto succ = successor_map(t.n(), f);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u : members(source_side(t, dir))) pairs.emplace_back(u, succ[u]);
    return make_matching(t.n(), dir, pairs);
}

std::pair<PerfectMatching, PerfectMatching> factor_matchings(const Tournament& t, const CycleFactor& f) {
    return {factor_matching(t, f, Direction::Up), factor_matching(t, f, Direction::Down)};
}

}  // namespace bitour
