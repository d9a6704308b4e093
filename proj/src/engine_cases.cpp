#include <algorithm>

#include "bitour/engine.hpp"
#include "bitour/factor.hpp"
#include "bitour/internal.hpp"
#include "bitour/search.hpp"

namespace bitour {

using namespace detail;

namespace {

std::string where(const Frame& f) { return std::string(" dir=") + to_string(f.dir()) + " p=" + std::to_string(f.p()); }

// Alternating cycle through the given classes of a complete bipartite part, starting
// with `lead` (taken from xs) when given.
Cycle alternate(std::vector<Vertex> xs, std::vector<Vertex> ys) {
    Cycle c;
    for (size_t i = 0; i < xs.size(); ++i) {
        c.vertices.push_back(xs[i]);
        c.vertices.push_back(ys[i]);
    }
    return c;
}

std::vector<Vertex> take(std::vector<Vertex>& pool, int count, std::vector<Vertex> required = {}) {
    std::vector<Vertex> out;
    for (Vertex v : required) {
        pool.erase(std::find(pool.begin(), pool.end(), v));
        out.push_back(v);
    }
    while (static_cast<int>(out.size()) < count) {
        out.push_back(pool.front());
        pool.erase(pool.begin());
    }
    return out;
}

// Tournament induced on the vertices of a host cycle, relabelled so that the
// cycle's S-vertices come first; `ids` maps new labels back to host ids.
Tournament induced_tournament(const Tournament& t, Mask set, std::vector<Vertex>& ids) {
    ids.clear();
    for (Vertex v : members(set & t.side_s())) ids.push_back(v);
    for (Vertex v : members(set & t.side_t())) ids.push_back(v);
    const int n = static_cast<int>(ids.size());
    Digraph d(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (t.arc(ids[i], ids[j])) d.add_arc(i, j);
    return Tournament(n / 4, d);
}

}  // namespace

// ---------------------------------------------------------------- Case A

Stage case_a(const Frame& f, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set(), cpset = f.cp.vertex_set();
    auto comps = strong_components(g, cpset, true);
    if (comps.size() > 1) {
        auto inits = initial_components(g, cpset, true);
        if (inits.size() != 1) throw Falsification("case A: complement of C' has no unique initial component", log);
        const Mask init = inits.front();
        for (auto [a, b] : cycle_arcs(f.cp)) {
            if (has(init, a) || !has(init, b)) continue;
            log.push_back("case A: arc entering the initial component" + where(f));
            if (auto s = claim_external_arc(f, a, b, log)) return *s;
        }
        throw Falsification("case A: no arc of C' enters the initial component", log);
    }
    std::string sub;
    if (is_strong(g, cset, true)) {
        sub = "A.1";
    } else {
        // A dominates B; is there an anti-path from B back to A?
        auto cc = strong_components(g, cset, true);
        bool back = false;
        for (size_t i = 1; i < cc.size() && !back; ++i)
            for (size_t j = 0; j < i && !back; ++j)
                for (Vertex v : members(cc[i]))
                    if (reachable(g, cset, v, true) & cc[j]) back = true;
        sub = back ? "A.2.1" : "A.2.2";
    }
    log.push_back("case " + sub + where(f));
    if (auto h = find_good_anti_cycle(f)) {
        if (auto s = good_anti_cycle(f, *h, log)) return *s;
    }
    if (f.p() % 2 == 0 && is_f_isomorphic(g, cset, RecognitionMode::CompleteBipartite))
        throw Falsification("case " + sub + ": C is complete bipartite, so D[C_1] would be F", log);
    throw Falsification("case " + sub + ": no good anti-cycle", log);
}

// ---------------------------------------------------------------- Case B

namespace {

struct Classes {
    Mask a = 0, b = 0;
};

Classes bipartition_of(const Frame& f) {
    const Mask cpset = f.cp.vertex_set();
    Vertex v0 = f.cp.at(0);
    Classes cl;
    for (Vertex v : members(cpset))
        if ((f.g().out(v) & cpset) == (f.g().out(v0) & cpset)) cl.a |= bit(v);
    cl.b = cpset & ~cl.a;
    return cl;
}

// Switch along (anti-path b..a in C) + a' + b' after routing C' through b' c a'.
std::optional<Stage> cf_claim1(const Frame& f, Mask cls, Mask other, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set();
    const int k = f.t->k(), p = f.p();
    for (auto [a, b] : cycle_arcs(f.c)) {
        auto back = find_anti_path(g, cset, b, a);
        if (!back) continue;
        for (Vertex a2 : members(g.anti_out(a, cls)))
            for (Vertex b2 : members(g.anti_in(b, cls) & ~bit(a2))) {
                Vertex c = std::countr_zero(other);
                std::vector<Vertex> xs = members(cls & ~bit(a2) & ~bit(b2)), ys = members(other & ~bit(c));
                Cycle route{{b2, c, a2}};
                for (size_t i = 0; i < ys.size(); ++i) {
                    route.vertices.push_back(ys[i]);
                    if (i < xs.size()) route.vertices.push_back(xs[i]);
                }
                if (!is_cycle(g, route)) continue;
                AntiCycle h{*back};
                h.vertices.push_back(a2);
                h.vertices.push_back(b2);
                if (!anti_cycle_defect(f.cd, h).empty()) continue;
                std::vector<std::string> local = log;
                local.push_back("case B claim1 a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                " a'=" + std::to_string(a2) + " b'=" + std::to_string(b2) + " c=" + std::to_string(c));
                PerfectMatching m2 = switch_matching(f.cd.matching, f.cd, h, &local);
                ContractedDigraph cd2 = contract(*f.t, m2);
                CycleFactor sw = switch_factor({f.c, route}, h, f.cd);
                CycleFactor group, rest;
                const Cycle* big = nullptr;
                for (const Cycle& cyc : sw) {
                    if (has(cyc.vertex_set(), a2)) group.push_back(cyc);
                    else if (has(cyc.vertex_set(), b2)) big = &cyc;
                    else rest.push_back(cyc);
                }
                if (group.size() != 1 || group[0].length() != 3 || !big)
                    throw Falsification("case B claim1: switch did not produce the 3-cycle a'bc", local);
                // Split the complete bipartite remainder into p - 2 and 2k - 2p vertices.
                std::vector<Vertex> left, right;
                for (Vertex v : big->vertices)
                    (has(cls, v) ? left : right).push_back(v);
                const int half = (p - 2) / 2;
                std::vector<Vertex> l1(left.begin(), left.begin() + half), r1(right.begin(), right.begin() + half);
                std::vector<Vertex> l2(left.begin() + half, left.end()), r2(right.begin() + half, right.end());
                group.push_back(alternate(l1, r1));
                rest.push_back(alternate(l2, r2));
                if (!is_cycle(cd2.digraph, group[1]) || !is_cycle(cd2.digraph, rest.back()) ||
                    static_cast<int>(l2.size() + r2.size()) != 2 * k - 2 * p)
                    throw Falsification("case B claim1: remainder is not complete bipartite after the switch", local);
                if (auto s = somme_cf(*f.t, cd2, group, rest, local)) {
                    log = local;
                    return s;
                }
                throw Falsification("case B claim1: 3-cycle and split cycle not strongly linked", local);
            }
    }
    return std::nullopt;
}

Stage case_b_recursive(const Frame& f, const Classes& cl, std::vector<std::string>& log) {
    const Tournament& t = *f.t;
    const int p = f.p();
    const Cycle host1 = lift(f.cd, f.c), host2 = lift(f.cd, f.cp);
    std::vector<Vertex> ids;
    Tournament sub = induced_tournament(t, host1.vertex_set(), ids);
    if (validate(sub)) throw Falsification("case B.1: D[C_1] is not regular", log);
    log.push_back("case B.1 recursion on D[C_1] k'=" + std::to_string(sub.k()));
    auto res = solve(sub, 3);
    auto* cert = std::get_if<TwoFactorCertificate>(&res);
    if (!cert) throw Falsification("case B.1: D[C_1] is F", log);
    auto back = [&](const Cycle& c) {
        Cycle out;
        for (Vertex v : c.vertices) out.vertices.push_back(ids[v]);
        return out;
    };
    Cycle ind = back(cert->cycle_2p), ind_rest = back(cert->cycle_rest);
    PerfectMatching m2 = factor_matching(t, {ind, ind_rest, host2}, f.dir());
    ContractedDigraph cd2 = contract(t, m2);
    Cycle tri = contract_cycle(cd2, ind), tri_rest = contract_cycle(cd2, ind_rest);
    for (auto [x, y] : cycle_arcs(tri)) {
        Mask xs = cd2.digraph.out(x) & (cl.a | cl.b), ys = cd2.digraph.in(y) & (cl.a | cl.b);
        for (Vertex x2 : members(xs))
            for (Vertex y2 : members(ys)) {
                std::vector<Vertex> pa = members(cl.a), pb = members(cl.b);
                std::vector<Vertex> need_a, need_b;
                for (Vertex v : {x2, y2}) {
                    auto& need = has(cl.a, v) ? need_a : need_b;
                    if (std::find(need.begin(), need.end(), v) == need.end()) need.push_back(v);
                }
                const int half = (p - 2) / 2;
                if (static_cast<int>(need_a.size()) > half || static_cast<int>(need_b.size()) > half) continue;
                auto sa = take(pa, half, need_a), sb = take(pb, half, need_b);
                Cycle cs = alternate(sa, sb), cs_rest = alternate(pa, pb);
                if (!is_cycle(cd2.digraph, cs) || !is_cycle(cd2.digraph, cs_rest)) continue;
                log.push_back("case B.1 splice x=" + std::to_string(x) + " y=" + std::to_string(y));
                if (auto s = somme_cf(t, cd2, {tri, cs}, {tri_rest, cs_rest}, log)) return *s;
            }
    }
    throw Falsification("case B.1: no arc of the induced 3-cycle links into C'", log);
}

Stage case_b_four(const Frame& f, const Classes& cl, std::vector<std::string>& log) {
    const Tournament& t = *f.t;
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set();
    for (auto [za, zb] : {std::pair{cl.a, cl.b}, std::pair{cl.b, cl.a}})
        for (Vertex x : f.c.vertices) {
            Mask ins = g.in(x) & za, outs = g.out(x) & zb;
            if (!ins || !outs) continue;
            std::optional<Cycle> tri;
            for_each_cycle(g, cset & ~bit(x), 3, [&](const Cycle& c) {
                tri = c;
                return false;
            });
            if (!tri) continue;
            Vertex x1 = std::countr_zero(ins), y1 = std::countr_zero(outs);
            std::vector<Vertex> pa = members(za), pb = members(zb);
            auto sa = take(pa, 2, {x1}), sb = take(pb, 2, {y1});
            Cycle five{{x1, x, y1, sa[1], sb[1]}};
            Cycle rest = alternate(pa, pb);
            if (!is_cycle(g, five) || !is_cycle(g, rest)) continue;
            log.push_back("case B.1 p=4 five-cycle through x=" + std::to_string(x));
            CycleFactor host{lift(f.cd, five), lift(f.cd, *tri), lift(f.cd, rest)};
            return stage_from_merge(t, host, 0, log);
        }
    // V(C) = {a, a', b, b'}: a, a' see exactly A, b, b' exactly B.
    std::vector<Vertex> on_a, on_b;
    for (Vertex v : f.c.vertices) {
        Mask nb = (g.out(v) | g.in(v)) & (cl.a | cl.b);
        if (nb == cl.a) on_a.push_back(v);
        else if (nb == cl.b) on_b.push_back(v);
    }
    if (on_a.size() != 2 || on_b.size() != 2) throw Falsification("case B.1 p=4: C does not split as {a,a',b,b'}", log);
    if (!g.arc(on_a[0], on_a[1])) std::swap(on_a[0], on_a[1]);
    if (!g.arc(on_b[0], on_b[1])) std::swap(on_b[0], on_b[1]);
    std::vector<Vertex> pa = members(cl.a), pb = members(cl.b);
    auto sa = take(pa, 3), sb = take(pb, 3);
    Cycle one{{on_a[0], on_a[1], sa[0], sb[1], sa[2]}};
    Cycle two{{on_b[0], on_b[1], sb[0], sa[1], sb[2]}};
    if (!is_cycle(g, one) || !is_cycle(g, two)) throw Falsification("case B.1 p=4: five-cycles are not cycles", log);
    log.push_back("case B.1 p=4 two five-cycles");
    CycleFactor host{lift(f.cd, one), lift(f.cd, two)};
    if (!pa.empty()) {
        Cycle rest = alternate(pa, pb);
        if (!is_cycle(g, rest)) throw Falsification("case B.1 p=4: remainder not hamiltonian", log);
        host.push_back(lift(f.cd, rest));
    }
    return stage_from_merge(t, host, 0, log);
}

}  // namespace

Stage case_b(const Frame& f, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set(), cpset = f.cp.vertex_set();
    if (!is_f_isomorphic(g, cpset, RecognitionMode::CompleteBipartite))
        throw Falsification("case B: C' is not complete bipartite", log);
    Classes cl = bipartition_of(f);
    log.push_back("case B" + where(f));
    if (auto s = cf_claim1(f, cl.a, cl.b, log)) return *s;
    if (auto s = cf_claim1(f, cl.b, cl.a, log)) return *s;
    if (is_strong(g, cset, true)) {
        for (Vertex v : f.c.vertices)
            if (g.in_degree(v, cset) != f.p() / 2 || g.out_degree(v, cset) != f.p() / 2)
                throw Falsification("case B.1: D[C] is not p/2-regular", log);
        if (f.p() >= 6) return case_b_recursive(f, cl, log);
        return case_b_four(f, cl, log);
    }
    throw Falsification("case B.2: alternation contradiction reached", log);
}

// ---------------------------------------------------------------- Case C

namespace {

std::optional<Stage> parity_case(const Frame& f, std::vector<std::string>& log) {
    const Digraph& g = f.g();
    const int p = f.p();
    Cycle cp = f.cp;
    const int l = cp.length();
    auto u = [&](int i) { return cp.at(i - 1); };  // 1-based, cyclic
    auto find_backward = [&]() -> int {
        for (int i = 1; i <= l; ++i)
            if (g.arc(u(i), u(i - 2))) return i;
        return 0;
    };
    int i0 = find_backward();
    if (!i0) {
        Cycle rev{std::vector<Vertex>(cp.vertices.rbegin(), cp.vertices.rend())};
        if (is_cycle(g, rev)) {
            cp = rev;
            i0 = find_backward();
        }
    }
    if (!i0) {
        if (p % 2 == 1) throw Falsification("case C parity: no distance-2 arc on C' for odd p", log);
        // Odd and even positions are the two classes; move a neighbour of u_1 to position 3.
        int swap_with = 0;
        for (int i = 5; i <= l - 1 && !swap_with; i += 2)
            if (g.arc(u(1), u(i)) || g.arc(u(i), u(1))) swap_with = i;
        if (!swap_with) throw Falsification("case C parity: u_1 has no neighbour among odd positions", log);
        std::swap(cp.vertices[2], cp.vertices[swap_with - 1]);
        if (!is_cycle(g, cp)) throw Falsification("case C parity: rewired C'' is not a cycle", log);
        log.push_back("case C parity rewire u_3<->u_" + std::to_string(swap_with));
        i0 = find_backward();
        if (!i0) {
            Cycle rev{std::vector<Vertex>(cp.vertices.rbegin(), cp.vertices.rend())};
            cp = rev;
            i0 = find_backward();
        }
        if (!i0) throw Falsification("case C parity: rewiring produced no distance-2 arc", log);
    }
    // Rotate so that u_l -> u_{l-2}.
    std::rotate(cp.vertices.begin(), cp.vertices.begin() + (i0 % l), cp.vertices.end());
    if (!g.arc(u(l), u(l - 2))) throw Falsification("case C parity: rotation lost the distance-2 arc", log);
    if (l - p < 4) throw Falsification("case C parity: C' too short for the digon chain (k = p + 1)", log);

    auto digon = [&](int i) { return Cycle{{u(i), u(i + 1)}}; };
    auto segment = [&](int a, int b) {  // cycle on u_a..u_b closed by the arc between u_a and u_b
        Cycle c;
        if (g.arc(u(b), u(a))) {
            for (int i = a; i <= b; ++i) c.vertices.push_back(u(i));
        } else {
            c.vertices.push_back(u(a));
            for (int i = b; i > a; --i) c.vertices.push_back(u(i));
        }
        return c;
    };
    // The p + 1 vertices u_{l-p}..u_l, ending with the triangle when p is even.
    auto tail_group = [&](int from) {
        CycleFactor out;
        int last_pair_end = p % 2 == 1 ? l : l - 3;
        for (int i = from; i < last_pair_end; i += 2) out.push_back(digon(i));
        if (p % 2 == 0) out.push_back(Cycle{{u(l - 2), u(l - 1), u(l)}});
        return out;
    };
    std::vector<int> xs{1};
    for (int i = 5; i <= l - p + 1; i += 2) xs.push_back(i);
    for (int i : xs) {
        if (!g.arc(u(3), u(i)) && !g.arc(u(i), u(3))) continue;
        CycleFactor group, others{f.c};
        if (i == 1) {
            group = tail_group(l - p);
            others.push_back(segment(1, 3));
            for (int j = 4; j < l - p; j += 2) others.push_back(digon(j));
        } else if (i == l - p + 1) {
            group = tail_group(l - p + 2);
            group.push_back(digon(1));
            others.push_back(segment(3, l - p + 1));
        } else {
            group = tail_group(l - p);
            others.push_back(digon(1));
            others.push_back(segment(3, i));
            for (int j = i + 1; j < l - p; j += 2) others.push_back(digon(j));
        }
        bool ok = true;
        for (const Cycle& c : group) ok = ok && is_cycle(g, c);
        for (const Cycle& c : others) ok = ok && is_cycle(g, c);
        if (!ok) throw Falsification("case C parity: digon chain is not a cycle-factor", log);
        log.push_back("case C parity p%2=" + std::to_string(p % 2) + " i=" + std::to_string(i));
        if (auto s = somme_cf(*f.t, f.cd, group, others, log)) return s;
        throw Falsification("case C parity: tail group not strong", log);
    }
    throw Falsification("case C parity: u_3 has no neighbour in X", log);
}

}  // namespace

Stage case_c(const Frame& f, std::vector<std::string>& log, int depth) {
    const Tournament& t = *f.t;
    const Digraph& g = f.g();
    const Mask cset = f.c.vertex_set(), cpset = f.cp.vertex_set();
    log.push_back("case C" + where(f));
    // Not P on the other side: every vertex of C' misses C in one direction.
    for (Vertex x : f.cp.vertices)
        if ((g.out(x) & cset) && (g.in(x) & cset))
            throw Falsification("case C: vertex " + std::to_string(x) + " has arcs to and from C", log);

    for (Vertex x : f.cp.vertices) {
        if ((g.out(x) | g.in(x)) & cset) continue;
        log.push_back("case C noarc x=" + std::to_string(x));
        if (auto s = find_digon_exchange(f, log)) return *s;
        if (auto s = try_external_arcs(f, log)) return *s;
        throw Falsification("case C noarc: no exchange and no external arc", log);
    }

    auto comps = strong_components(g, cpset, true);
    for (auto [x, y] : cycle_arcs(f.cp)) {
        if (g.arc(y, x)) continue;
        log.push_back("case C digon-free arc x=" + std::to_string(x) + " y=" + std::to_string(y));
        if (!same_component(comps, x, y)) {
            if (auto s = claim_external_arc(f, x, y, log)) return *s;
            throw Falsification("case C: external arc x->y did not conclude", log);
        }
        if (auto s = generic_finish(f, log)) return *s;
        Mask zs = g.anti_out(x, cpset) & g.anti_in(y, cpset);
        if (!zs) {
            if (auto s = try_external_arcs(f, log)) return *s;
            throw Falsification("case C: no z closes yxz and no external arc", log);
        }
        if (depth > 0) throw Falsification("case C: re-dispatch after switch came back to case C", log);
        Vertex z = std::countr_zero(zs);
        AntiCycle h{{y, x, z}};
        PerfectMatching m2 = switch_matching(f.cd.matching, f.cd, h, &log);
        ContractedDigraph cd2 = contract(t, m2);
        CycleFactor sw = switch_factor({f.c, f.cp}, h, f.cd);
        if (sw.size() != 2) throw Falsification("case C: switch along yxz broke C'", log);
        const Cycle& c2 = has(sw[0].vertex_set(), x) ? sw[0] : sw[1];
        Cycle host1 = lift(cd2, f.c), host2 = lift(cd2, c2);
        FactorProperties props = detect_properties(t, host1, host2);
        const Direction other = opposite(f.dir());
        bool p_other = other == Direction::Up ? props.p_up : props.p_down;
        bool q_other = other == Direction::Up ? props.q_up : props.q_down;
        log.push_back("case C switch yxz z=" + std::to_string(z));
        if (!p_other || !q_other)
            throw Falsification("case C: switched factor lacks P and Q on the other side", log);
        return case_a(make_frame(t, host1, host2, other), log);
    }

    return *parity_case(f, log);
}

}  // namespace bitour
