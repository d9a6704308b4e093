#include "bitour/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitour {

std::optional<CycleFactor> find_cycle_factor(const Digraph& d, Mask ground) {
    if (!ground) return CycleFactor{};
    const int n = d.size();
    std::vector<Vertex> in_mate(n, -1), out_mate(n, -1);
    for (Vertex root : members(ground)) {
        Mask visited = 0;
        auto augment = [&](auto&& self, Vertex u) -> bool {
            for (Vertex v : members(d.out(u) & ground & ~visited)) {
                visited |= bit(v);
                if (in_mate[v] == -1 || self(self, in_mate[v])) {
                    in_mate[v] = u;
                    out_mate[u] = v;
                    return true;
                }
            }
            return false;
        };
        if (!augment(augment, root)) return std::nullopt;
    }
    return cycles_of(out_mate, ground);
}

std::optional<Cycle> hamiltonian_cycle_dp(const Digraph& d, Mask ground) {
    const std::vector<Vertex> vs = members(ground);
    const int total = static_cast<int>(vs.size());
    if (total > 22) throw std::invalid_argument("hamiltonian_cycle_dp: ground set too large");
    if (total < 2) return std::nullopt;
    const Vertex start = vs[0];
    const int r = total - 1;  // vertices other than start, indexed 0..r-1
    auto host = [&](int i) { return vs[i + 1]; };
    // reach[sub]: host-id mask of end vertices of start-paths covering exactly {start} u sub.
    std::vector<Mask> reach(std::size_t{1} << r, 0);
    for (int i = 0; i < r; ++i)
        if (d.arc(start, host(i))) reach[std::size_t{1} << i] |= bit(host(i));
    for (std::size_t sub = 1; sub < reach.size(); ++sub) {
        if (!reach[sub]) continue;
        for (int i = 0; i < r; ++i) {
            if (sub >> i & 1U) continue;
            Vertex v = host(i);
            if (d.in(v) & reach[sub]) reach[sub | (std::size_t{1} << i)] |= bit(v);
        }
    }
    const std::size_t full = reach.size() - 1;
    Mask ends = reach[full] & d.in(start);
    if (!ends) return std::nullopt;
    std::vector<Vertex> path;
    std::size_t sub = full;
    Vertex cur = std::countr_zero(ends);
    while (true) {
        path.push_back(cur);
        int idx = static_cast<int>(std::find(vs.begin(), vs.end(), cur) - vs.begin()) - 1;
        std::size_t prev = sub & ~(std::size_t{1} << idx);
        if (!prev) break;
        Mask cand = reach[prev] & d.in(cur);
        cur = std::countr_zero(cand);
        sub = prev;
    }
    path.push_back(start);
    std::reverse(path.begin(), path.end());
    return Cycle{path};
}

namespace {

// Cycle on c1 from index `from` forward through `count` vertices.
void append_segment(std::vector<Vertex>& out, const Cycle& c, int from, int count) {
    for (int i = 0; i < count; ++i) out.push_back(c.at(from + i));
}

std::optional<Cycle> splice_scan(const Digraph& d, const Cycle& c1, const Cycle& c2) {
    const int m = c1.length(), r = c2.length();
    // Two crossing arcs c_i -> d_{j+1}, d_j -> c_{i+1}.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j)
            if (d.arc(c1.at(i), c2.at(j + 1)) && d.arc(c2.at(j), c1.at(i + 1))) {
                std::vector<Vertex> out;
                append_segment(out, c1, i + 1, m);
                append_segment(out, c2, j + 1, r);
                return Cycle{out};
            }
    // Four crossing arcs: segments A1 = c_a..c_b, B1 = d_e..d_f, A2 = c_{b+1}..c_{a-1}, B2 = d_{f+1}..d_{e-1},
    // joined by c_b -> d_e, d_f -> c_{b+1}, c_{a-1} -> d_{f+1}, d_{e-1} -> c_a.
    for (int b = 0; b < m; ++b)
        for (int e = 0; e < r; ++e) {
            if (!d.arc(c1.at(b), c2.at(e))) continue;
            for (int lenB1 = 1; lenB1 < r; ++lenB1) {
                int f = e + lenB1 - 1;
                if (!d.arc(c2.at(f), c1.at(b + 1))) continue;
                for (int lenA1 = 1; lenA1 < m; ++lenA1) {
                    int a = b - lenA1 + 1;
                    if (!d.arc(c1.at(a - 1), c2.at(f + 1)) || !d.arc(c2.at(e - 1), c1.at(a))) continue;
                    std::vector<Vertex> out;
                    append_segment(out, c1, a, lenA1);
                    append_segment(out, c2, e, lenB1);
                    append_segment(out, c1, b + 1, m - lenA1);
                    append_segment(out, c2, f + 1, r - lenB1);
                    return Cycle{out};
                }
            }
        }
    return std::nullopt;
}

bool has_arc_from_to(const Digraph& d, Mask a, Mask b) {
    for (Vertex u : members(a))
        if (d.out(u) & b) return true;
    return false;
}

// Chain splice along a directed cycle of the cycle-quotient: cycle i is entered at
// entry[i], walked fully, and left from its predecessor toward entry[i+1].
std::optional<Cycle> chain_merge(const Digraph& d, const std::vector<const Cycle*>& chain) {
    const int len = static_cast<int>(chain.size());
    std::vector<int> entry(len, 0);
    auto search = [&](auto&& self, int i) -> bool {
        if (i == len) {
            const Cycle& last = *chain[len - 1];
            return d.arc(last.at(entry[len - 1] - 1), chain[0]->at(entry[0]));
        }
        for (int e = 0; e < chain[i]->length(); ++e) {
            if (i > 0) {
                const Cycle& prev = *chain[i - 1];
                if (!d.arc(prev.at(entry[i - 1] - 1), chain[i]->at(e))) continue;
            }
            entry[i] = e;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    std::vector<Vertex> out;
    for (int i = 0; i < len; ++i) append_segment(out, *chain[i], entry[i], chain[i]->length());
    return Cycle{out};
}

std::optional<Cycle> exact_fallback(const Digraph& d, Mask ground, const char* where) {
    if (popcount(ground) > kMergeFallbackLimit)
        throw Falsification(std::string(where) + ": splice scan failed on " + std::to_string(popcount(ground)) +
                            " vertices {" + join_ids(members(ground)) + "}, beyond exact fallback limit");
    return hamiltonian_cycle_dp(d, ground);
}

}  // namespace

std::optional<Cycle> merge_pair(const Digraph& d, const Cycle& c1, const Cycle& c2) {
    const Mask a = c1.vertex_set(), b = c2.vertex_set();
    if (a & b) throw std::invalid_argument("merge_pair: cycles intersect");
    if (!has_arc_from_to(d, a, b) || !has_arc_from_to(d, b, a)) return std::nullopt;
    if (auto c = splice_scan(d, c1, c2)) return c;
    return exact_fallback(d, a | b, "merge_pair");
}

bool dominance_ordered(const Digraph& d, const CycleFactor& ordered) {
    for (size_t i = 0; i < ordered.size(); ++i)
        for (size_t j = i + 1; j < ordered.size(); ++j)
            if (d.arcs_between(ordered[j].vertex_set(), ordered[i].vertex_set()) != 0) return false;
    return true;
}

HMOutcome hm_normalize(const Digraph& d, Mask ground, const CycleFactor& f) {
    if (!is_cycle_factor(d, f, ground)) throw std::invalid_argument("hm_normalize: factor does not span ground set");
    CycleFactor cycles = f;
    while (cycles.size() > 1) {
        const int m = static_cast<int>(cycles.size());
        std::vector<Mask> sets(m);
        for (int i = 0; i < m; ++i) sets[i] = cycles[i].vertex_set();
        // quotient[i]: cycles j that receive an arc from cycle i.
        std::vector<Mask> quotient(m, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j && has_arc_from_to(d, sets[i], sets[j])) quotient[i] |= bit(j);

        bool merged = false;
        for (int i = 0; i < m && !merged; ++i)
            for (int j = i + 1; j < m && !merged; ++j) {
                if (!has(quotient[i], j) || !has(quotient[j], i)) continue;
                if (auto c = merge_pair(d, cycles[i], cycles[j])) {
                    cycles.erase(cycles.begin() + j);
                    cycles[i] = *c;
                    merged = true;
                }
            }
        if (merged) continue;

        // No mutually linked pair: either the quotient is acyclic (done) or a longer
        // directed cycle of cycles has to be spliced.
        Digraph q(m);
        for (int i = 0; i < m; ++i)
            for (Vertex j : members(quotient[i])) q.add_arc(i, j);
        auto comps = strong_components(q, q.all(), false);
        auto big = std::find_if(comps.begin(), comps.end(), [](Mask c) { return popcount(c) > 1; });
        if (big == comps.end()) {
            CycleFactor ordered;
            for (Mask c : comps) ordered.push_back(cycles[std::countr_zero(c)]);
            return HMOutcome{false, ordered};
        }
        // Shortest directed cycle through the lowest member of the component.
        Vertex root = std::countr_zero(*big);
        std::optional<std::vector<Vertex>> best;
        for (Vertex j : members(q.out(root) & *big)) {
            auto back = find_path(q, *big, j, root, false);
            if (back && (!best || back->size() < best->size())) best = back;
        }
        std::vector<const Cycle*> chain{&cycles[root]};
        for (size_t i = 0; i + 1 < best->size(); ++i) chain.push_back(&cycles[(*best)[i]]);
        Mask chain_set = 0;
        for (const Cycle* c : chain) chain_set |= c->vertex_set();
        auto c = chain_merge(d, chain);
        if (!c) c = exact_fallback(d, chain_set, "hm_normalize");
        if (!c) {
            chain_set = 0;
            for (Vertex i : members(*big)) chain_set |= sets[i];
            c = exact_fallback(d, chain_set, "hm_normalize");
        }
        if (!c) throw Falsification("hm_normalize: strongly linked cycles admit no common hamiltonian cycle");
        CycleFactor next;
        for (const Cycle& old : cycles)
            if (!(old.vertex_set() & chain_set)) next.push_back(old);
        next.push_back(*c);
        cycles = std::move(next);
    }
    return HMOutcome{true, cycles};
}

}  // namespace bitour
