#include "bitour/rewiring.hpp"

#include <stdexcept>

namespace bitour {

std::string anti_cycle_defect(const ContractedDigraph& cd, const AntiCycle& ac) {
    if (ac.length() < 2) return "anti-cycle shorter than 2";
    Mask seen = 0;
    for (Vertex v : ac.vertices) {
        if (v < 0 || v >= cd.digraph.size() || !has(cd.vertices, v))
            return "vertex " + std::to_string(v) + " not in contracted digraph";
        if (has(seen, v)) return "repeated vertex " + std::to_string(v);
        seen |= bit(v);
    }
    for (int i = 0; i < ac.length(); ++i) {
        Vertex u = ac.vertices[i], v = ac.vertices[(i + 1) % ac.length()];
        if (cd.arc(u, v)) return "consecutive pair " + std::to_string(u) + "->" + std::to_string(v) + " is an arc";
    }
    return {};
}

std::string switch_log_line(const PerfectMatching& m, const AntiCycle& ac) {
    std::string old;
    for (Vertex u : ac.vertices) {
        if (!old.empty()) old += ',';
        old += std::to_string(u) + ">" + std::to_string(m.partner[u]);
    }
    return "switch t=" + std::to_string(ac.length()) + " verts=" + join_ids(ac.vertices) + " old=" + old;
}

PerfectMatching switch_matching(const PerfectMatching& m, const ContractedDigraph& cd, const AntiCycle& ac,
                                std::vector<std::string>* log) {
    if (auto defect = anti_cycle_defect(cd, ac); !defect.empty())
        throw std::invalid_argument("switch: invalid anti-cycle: " + defect);
    if (cd.matching != m) throw std::invalid_argument("switch: matching is not the contracted digraph's matching");
    PerfectMatching out = m;
    const int t = ac.length();
    for (int i = 0; i < t; ++i) {
        Vertex u = ac.vertices[(i + 1) % t];
        Vertex old_mate = m.partner[ac.vertices[i]];
        out.partner[u] = old_mate;
        out.inverse[old_mate] = u;
    }
    if (log) log->push_back(switch_log_line(m, ac));
    return out;
}

CycleFactor switch_factor(const CycleFactor& f, const AntiCycle& ac, const ContractedDigraph& cd) {
    if (auto defect = anti_cycle_defect(cd, ac); !defect.empty())
        throw std::invalid_argument("switch_factor: invalid anti-cycle: " + defect);
    if (!is_cycle_factor(cd.digraph, f, cd.vertices))
        throw std::invalid_argument("switch_factor: factor does not span the contracted digraph");
    auto succ = successor_map(cd.digraph.size(), f);
    auto next = succ;
    const int t = ac.length();
    for (int i = 0; i < t; ++i) next[ac.vertices[(i + 1) % t]] = succ[ac.vertices[i]];
    return cycles_of(next, cd.vertices);
}

}  // namespace bitour
