#include <algorithm>

#include "bitour/engine.hpp"
#include "bitour/factor.hpp"
#include "bitour/internal.hpp"

namespace bitour {

bool is_good(const Tournament& t, const Stage& s, int q) {
    const Digraph& d = t.digraph();
    if (s.first.length() != 2 * q || s.rest.length() != t.n() - 2 * q) return false;
    if (!is_cycle_factor(d, {s.first, s.rest}, d.all())) return false;
    if (q % 2 == 0 && q >= 4 && is_f_isomorphic(d, s.first.vertex_set())) return false;
    return true;
}

Frame make_frame(const Tournament& t, const Cycle& c1, const Cycle& c2, Direction dir) {
    PerfectMatching m = factor_matching(t, {c1, c2}, dir);
    ContractedDigraph cd = contract(t, m);
    Cycle c = contract_cycle(cd, c1);
    Cycle cp = contract_cycle(cd, c2);
    return make_frame(cd, c, cp);
}

Frame make_frame(const ContractedDigraph& cd, const Cycle& c, const Cycle& cp) {
    if (!is_cycle_factor(cd.digraph, {c, cp}, cd.vertices))
        throw std::invalid_argument("frame: cycles do not form a 2-cycle-factor of the contracted digraph");
    Frame f;
    f.t = cd.base;
    f.cd = cd;
    f.c = c;
    f.cp = cp;
    return f;
}

namespace detail {

Stage stage_from_merge(const Tournament& t, const CycleFactor& host, int index, std::vector<std::string>& log) {
    MergeResult r = merge_to_two_factor(t, host, index);
    log.insert(log.end(), r.provenance.begin(), r.provenance.end());
    return Stage{r.first, r.rest, log};
}

std::optional<std::vector<Vertex>> anti_path_between(const Digraph& g, Mask within, Mask sources, Mask targets) {
    for (Vertex s : members(sources & within)) {
        if (has(targets, s)) return std::vector<Vertex>{s};
    }
    // Multi-source BFS in the complement.
    std::vector<Vertex> parent(g.size(), -1);
    Mask seen = sources & within, frontier = seen;
    while (frontier) {
        Mask next = 0;
        for (Vertex u : members(frontier))
            for (Vertex v : members(g.anti_out(u, within) & ~seen & ~next)) {
                parent[v] = u;
                next |= bit(v);
                if (has(targets, v)) {
                    std::vector<Vertex> path{v};
                    while (parent[path.back()] != -1) path.push_back(parent[path.back()]);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
            }
        seen |= next;
        frontier = next;
    }
    return std::nullopt;
}

std::vector<std::pair<Vertex, Vertex>> cycle_arcs(const Cycle& c) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (int i = 0; i < c.length(); ++i) out.emplace_back(c.at(i), c.at(i + 1));
    return out;
}

bool same_component(const std::vector<Mask>& comps, Vertex a, Vertex b) {
    for (Mask c : comps)
        if (has(c, a)) return has(c, b);
    return false;
}

}  // namespace detail

using namespace detail;

std::optional<Stage> somme_cf(const Tournament& t, const ContractedDigraph& cd, const CycleFactor& group,
                              const CycleFactor& rest, std::vector<std::string>& log) {
    Mask u = 0;
    for (const Cycle& c : group) u |= c.vertex_set();
    if (!is_strong(cd.digraph, u)) return std::nullopt;
    if (popcount(u) % 2 == 0 && is_f_isomorphic(cd.digraph, u, RecognitionMode::CompleteBipartite))
        return std::nullopt;
    CycleFactor lifted = lift(cd, group);
    Mask host = 0;
    for (const Cycle& c : lifted) host |= c.vertex_set();
    HMOutcome hm = hm_normalize(t.digraph(), host, lifted);
    if (!hm.hamiltonian)
        throw Falsification("somme-cf: lift of a strong contracted union is not hamiltonian", log);
    CycleFactor factor{hm.cycle()};
    for (const Cycle& c : lift(cd, rest)) factor.push_back(c);
    std::string sizes;
    for (const Cycle& c : group) sizes += (sizes.empty() ? "" : "+") + std::to_string(c.length());
    log.push_back("somme-cf group=" + sizes + " rest_cycles=" + std::to_string(rest.size()));
    return stage_from_merge(t, factor, 0, log);
}

std::optional<Stage> good_anti_cycle(const Frame& f, const AntiCycle& h, std::vector<std::string>& log) {
    if (!anti_cycle_defect(f.cd, h).empty()) return std::nullopt;
    const Mask cset = f.c.vertex_set(), cpset = f.cp.vertex_set();
    const int t = h.length();
    int start = -1, blocks = 0;
    for (int i = 0; i < t; ++i)
        if (has(cpset, h.vertices[i]) && !has(cpset, h.vertices[(i + t - 1) % t])) {
            start = i;
            ++blocks;
        }
    if (blocks != 1) return std::nullopt;
    AntiCycle r;
    for (int i = 0; i < t; ++i) r.vertices.push_back(h.vertices[(start + i) % t]);
    const int s = popcount(mask_of(r.vertices) & cpset);
    if (s == t || r.vertices[0] != f.cp.succ(r.vertices[s - 1])) return std::nullopt;

    PerfectMatching m2 = switch_matching(f.cd.matching, f.cd, r, &log);
    ContractedDigraph cd2 = contract(*f.t, m2);
    CycleFactor b = switch_factor({f.c, f.cp}, r, f.cd);
    const Mask cover = cset | bit(r.vertices[0]);
    CycleFactor b1, b2;
    Mask got = 0;
    for (const Cycle& c : b) {
        if ((c.vertex_set() & ~cover) == 0) {
            b1.push_back(c);
            got |= c.vertex_set();
        } else {
            b2.push_back(c);
        }
    }
    if (got != cover) throw Falsification("good-anti-cycle: switched factor does not split around V(C)+a1", log);
    log.push_back("good-anti-cycle h=" + join_ids(r.vertices) + " s=" + std::to_string(s));
    auto st = somme_cf(*f.t, cd2, b1, b2, log);
    if (!st) throw Falsification("good-anti-cycle: cycles covering V(C)+a1 are not strongly linked", log);
    return st;
}

std::optional<AntiCycle> find_good_anti_cycle(const Frame& f) {
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set(), cpset = f.cp.vertex_set();
    for (auto [y, x] : cycle_arcs(f.cp)) {
        auto p = find_anti_path(g, cpset, x, y);
        if (!p) continue;
        auto q = anti_path_between(g, cset, g.anti_out(y, cset), g.anti_in(x, cset));
        if (!q) continue;
        AntiCycle h{*p};
        h.vertices.insert(h.vertices.end(), q->begin(), q->end());
        return h;
    }
    return std::nullopt;
}

std::optional<Stage> claim_extending_c(const Frame& f, Vertex a, Vertex b, Vertex c, Vertex x, Vertex y,
                                       std::vector<std::string>& log) {
    const Digraph& g = f.g();
    if (f.cp.succ(a) != b || f.cp.succ(b) != c || f.c.succ(x) != y) return std::nullopt;
    if (!g.arc(a, c) || !g.arc(x, b) || !g.arc(b, y)) return std::nullopt;
    Cycle grown, shrunk;
    for (Vertex v : f.c.vertices) {
        grown.vertices.push_back(v);
        if (v == x) grown.vertices.push_back(b);
    }
    for (Vertex v : f.cp.vertices)
        if (v != b) shrunk.vertices.push_back(v);
    log.push_back("extending-c a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c) +
                  " x=" + std::to_string(x) + " y=" + std::to_string(y));
    return Stage{lift(f.cd, grown), lift(f.cd, shrunk), log};
}

std::optional<Stage> find_extending_c(const Frame& f, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    for (Vertex a : f.cp.vertices) {
        Vertex b = f.cp.succ(a), c = f.cp.succ(b);
        if (!g.arc(a, c)) continue;
        for (Vertex x : f.c.vertices) {
            Vertex y = f.c.succ(x);
            if (g.arc(x, b) && g.arc(b, y)) return claim_extending_c(f, a, b, c, x, y, log);
        }
    }
    return std::nullopt;
}

namespace detail {

// Switch along the anti-digons {a, x} and {c, t} (a, c on C; x, t on C'): both cycles
// exchange a short path. Returns the stage when the new C-side cycle has p + 1 vertices.
std::optional<Stage> digon_exchange(const Frame& f, Vertex a, Vertex x, Vertex c, Vertex t,
                                    std::vector<std::string>& log) {
    const Digraph& g = f.g();
    if (a == c || x == t) return std::nullopt;
    for (auto [u, v] : {std::pair{a, x}, std::pair{c, t}})
        if (g.arc(u, v) || g.arc(v, u)) return std::nullopt;
    std::vector<std::string> local = log;
    AntiCycle first{{a, x}}, second{{c, t}};
    PerfectMatching m1 = switch_matching(f.cd.matching, f.cd, first, &local);
    ContractedDigraph cd1 = contract(*f.t, m1);
    CycleFactor f1 = switch_factor({f.c, f.cp}, first, f.cd);
    PerfectMatching m2 = switch_matching(m1, cd1, second, &local);
    ContractedDigraph cd2 = contract(*f.t, m2);
    CycleFactor f2 = switch_factor(f1, second, cd1);
    if (f2.size() != 2) return std::nullopt;
    const int want = f.p() + 1;
    int idx = f2[0].length() == want ? 0 : f2[1].length() == want ? 1 : -1;
    if (idx < 0) return std::nullopt;
    local.push_back("digon-exchange a=" + std::to_string(a) + " x=" + std::to_string(x) + " c=" + std::to_string(c) +
                    " t=" + std::to_string(t));
    Stage s{lift(cd2, f2[idx]), lift(cd2, f2[1 - idx]), local};
    if (!is_good(*f.t, s, want)) return std::nullopt;
    log = local;
    return s;
}

std::optional<Stage> find_digon_exchange(const Frame& f, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    const int p = f.p();
    auto independent = [&](Vertex u, Vertex v) { return !g.arc(u, v) && !g.arc(v, u); };
    for (Vertex a : f.c.vertices)
        for (Vertex x : f.cp.vertices) {
            if (!independent(a, x)) continue;
            for (Vertex c : f.c.vertices)
                for (Vertex t : f.cp.vertices) {
                    if (c == a || t == x || !independent(c, t)) continue;
                    // Length of the new cycle through a: C' from succ(x) to t, then C from succ(c) to a.
                    int len = (f.cp.index_of(t) - f.cp.index_of(x) + f.cp.length()) % f.cp.length() +
                              (f.c.index_of(a) - f.c.index_of(c) + p) % p;
                    if (len != p + 1) continue;
                    if (auto s = digon_exchange(f, a, x, c, t, log)) return s;
                }
        }
    return std::nullopt;
}

// Every arc ab of C' joining two strong components of the complement, with an anti-path
// from b back to a.
std::vector<std::pair<Vertex, Vertex>> external_arcs(const Frame& f) {
    const Mask cpset = f.cp.vertex_set();
    auto comps = strong_components(f.g(), cpset, true);
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [a, b] : cycle_arcs(f.cp))
        if (!same_component(comps, a, b) && find_anti_path(f.g(), cpset, b, a)) out.emplace_back(a, b);
    return out;
}

std::optional<Stage> try_external_arcs(const Frame& f, std::vector<std::string>& log) {
    for (auto [a, b] : external_arcs(f))
        if (auto s = claim_external_arc(f, a, b, log)) return s;
    return std::nullopt;
}

std::optional<Stage> generic_finish(const Frame& f, std::vector<std::string>& log) {
    if (auto h = find_good_anti_cycle(f)) return good_anti_cycle(f, *h, log);
    return find_extending_c(f, log);
}

}  // namespace detail

std::optional<Stage> claim_external_arc(const Frame& f, Vertex a, Vertex b, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set(), cpset = f.cp.vertex_set();
    if (!has(cpset, a) || f.cp.succ(a) != b) return std::nullopt;
    auto back = find_anti_path(g, cpset, b, a);
    if (!back) return std::nullopt;
    auto comps = strong_components(g, cpset, true);
    if (same_component(comps, a, b)) return std::nullopt;

    if (Mask direct = g.anti_out(a, cset) & g.anti_in(b, cset)) {
        AntiCycle h{*back};
        h.vertices.push_back(std::countr_zero(direct));
        log.push_back("external-arc a=" + std::to_string(a) + " b=" + std::to_string(b) + " direct");
        return good_anti_cycle(f, h, log);
    }
    const int k = f.t->k(), p = f.p();
    const Mask aset = reachable(g, cpset, a, true), bset = cpset & ~aset;
    const int outside = popcount(g.anti_out(a, cset)) + popcount(g.anti_in(b, cset));
    if (outside != p)
        throw Falsification("external-arc: anti-degrees of a and b into C sum to " + std::to_string(outside) +
                                " instead of p=" + std::to_string(p),
                            log);
    if (popcount(g.anti_out(a, f.cd.vertices)) + popcount(g.anti_in(b, f.cd.vertices)) != 2 * k - 2)
        throw Falsification("external-arc: anti-degree identity 2k-2 broken", log);

    log.push_back("external-arc a=" + std::to_string(a) + " b=" + std::to_string(b) + " partition |A|=" +
                  std::to_string(popcount(aset)) + " |B|=" + std::to_string(popcount(bset)));
    if (auto s = generic_finish(f, log)) return s;

    // C' alternates between A and B: a_1 b_1 ... a_m b_m.
    const int l = f.cp.length();
    int first_a = -1;
    for (int i = 0; i < l; ++i) {
        bool in_a = has(aset, f.cp.at(i));
        if (in_a == has(aset, f.cp.at(i + 1)))
            throw Falsification("external-arc: C' does not alternate between A and B", log);
        if (in_a && first_a < 0) first_a = i;
    }
    const int m = l / 2;
    if (m < 3) throw Falsification("external-arc: alternating C' shorter than 6", log);
    auto a_at = [&](int i) { return f.cp.at(first_a + 2 * (((i % m) + m) % m)); };
    auto b_at = [&](int i) { return f.cp.at(first_a + 2 * (((i % m) + m) % m) + 1); };
    for (int i = 0; i < m; ++i)
        for (Vertex x : members(g.anti_out(a_at(i), cset) & g.anti_in(b_at(i + 1), cset))) {
            // a_{i-1} b_{i-1} a_i b_i a_{i+1} b_{i+1}  ->  a_{i-1} b_i a_{i+1} b_{i-1} a_i b_{i+1}
            Cycle rewired;
            rewired.vertices = {a_at(i - 1), b_at(i), a_at(i + 1), b_at(i - 1), a_at(i), b_at(i + 1)};
            for (int j = 2; j < m - 1; ++j) {
                rewired.vertices.push_back(a_at(i + j));
                rewired.vertices.push_back(b_at(i + j));
            }
            if (!is_cycle(g, rewired)) continue;
            Frame f2 = make_frame(f.cd, f.c, rewired);
            auto path = find_anti_path(g, cpset, b_at(i + 1), a_at(i));
            if (!path) continue;
            AntiCycle h{*path};
            h.vertices.push_back(x);
            log.push_back("external-arc rewire i=" + std::to_string(i) + " x=" + std::to_string(x));
            if (auto s = good_anti_cycle(f2, h, log)) return s;
        }
    throw Falsification("external-arc: degree contradiction reached (no anti-arc closes the alternation)", log);
}

}  // namespace bitour
