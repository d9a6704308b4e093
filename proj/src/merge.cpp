#include "bitour/merge.hpp"

#include <algorithm>
#include <stdexcept>

#include "bitour/factor.hpp"
#include "bitour/search.hpp"

namespace bitour {

namespace {

UnorderedPair make_pair_sorted(Vertex a, Vertex b) { return a < b ? UnorderedPair{a, b} : UnorderedPair{b, a}; }

bool contains_pair(const std::vector<UnorderedPair>& v, Vertex a, Vertex b) {
    return std::binary_search(v.begin(), v.end(), make_pair_sorted(a, b));
}

// Number of vertices met walking forward from u up to (excluding) v.
int forward_distance(const Cycle& c, Vertex u, Vertex v) {
    return (c.index_of(v) - c.index_of(u) + c.length()) % c.length();
}

void append_walk(std::vector<Vertex>& out, const Cycle& c, Vertex from, int count) {
    int i = c.index_of(from);
    for (int j = 0; j < count; ++j) out.push_back(c.at(i + j));
}

}  // namespace

bool WRAnalysis::in_w(Vertex a, Vertex b) const { return contains_pair(w_pairs, a, b); }
bool WRAnalysis::in_r(Vertex a, Vertex b) const { return contains_pair(r_pairs, a, b); }

WRAnalysis compute_wr(const ContractedDigraph& cd, const Cycle& c, const Cycle& first, const Cycle& last) {
    const Mask first_set = first.vertex_set(), last_set = last.vertex_set();
    const int c1 = first.length(), cl = last.length();
    WRAnalysis wr;
    std::vector<Vertex> vs = c.vertices;
    std::sort(vs.begin(), vs.end());
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            Vertex x = vs[i], y = vs[j];
            if (cd.digraph.out_degree(x, first_set) + cd.digraph.out_degree(y, first_set) > c1)
                wr.w_pairs.emplace_back(x, y);
            if (cd.digraph.in_degree(x, last_set) + cd.digraph.in_degree(y, last_set) > cl)
                wr.r_pairs.emplace_back(x, y);
        }
    return wr;
}

std::vector<UnorderedPair> bicolored_pairs(const WRAnalysis& wr, const Cycle& c) {
    std::vector<UnorderedPair> out;
    for (auto [x, y] : wr.w_pairs)
        if (wr.in_r(c.succ(x), c.succ(y))) out.emplace_back(x, y);
    return out;
}

UnorderedPair find_bicolored_pair(const WRAnalysis& wr, const Cycle& c) {
    auto pairs = bicolored_pairs(wr, c);
    if (pairs.empty())
        throw Falsification("no pair is both white and red (w=" + std::to_string(wr.w()) +
                            ", r=" + std::to_string(wr.r()) + ", p=" + std::to_string(c.length()) + ")");
    return pairs.front();
}

std::vector<std::pair<Vertex, Vertex>> splices_into_first(const ContractedDigraph& cd, const Cycle& first, Vertex y1,
                                                          Vertex z1, int internal) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex y : first.vertices) {
        if (!cd.arc(y1, y)) continue;
        Vertex z = first.at(first.index_of(y) + internal + 1);
        if (z != y && cd.arc(z1, z)) out.emplace_back(y, z);
    }
    return out;
}

std::vector<std::pair<Vertex, Vertex>> splices_from_last(const ContractedDigraph& cd, const Cycle& last, Vertex yl,
                                                         Vertex zl, int internal) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex zp : last.vertices) {
        if (!cd.arc(zp, zl)) continue;
        Vertex yp = last.at(last.index_of(zp) + internal + 1);
        if (yp != zp && cd.arc(yp, yl)) out.emplace_back(yp, zp);
    }
    return out;
}

std::optional<std::string> arc_count_identity_check(const Tournament& t, const Cycle& c, const CycleFactor& ordered) {
    if (ordered.empty()) return "no trailing cycles";
    const int k = t.k();
    const Digraph& d = t.digraph();
    const int c1 = ordered.front().length() / 2, cl = ordered.back().length() / 2;
    if (c1 >= 2 * k || cl >= 2 * k) return "trailing cycle covers a whole side";
    int e1 = d.arcs_between(c.vertex_set(), ordered.front().vertex_set());
    int el = d.arcs_between(ordered.back().vertex_set(), c.vertex_set());
    if (e1 != c1 * (2 * k - c1))
        return "e(C,C_1)=" + std::to_string(e1) + " but c_1(2k-c_1)=" + std::to_string(c1 * (2 * k - c1));
    if (el != cl * (2 * k - cl))
        return "e(C_l,C)=" + std::to_string(el) + " but c_l(2k-c_l)=" + std::to_string(cl * (2 * k - cl));
    return std::nullopt;
}

bool witness_holds(const Digraph& d, const FWitness& w, Mask within) {
    auto [a, b, c, e] = w;
    Mask set = bit(a) | bit(b) | bit(c) | bit(e);
    return popcount(set) == 4 && (set & ~within) == 0 && d.arc(a, b) && d.arc(b, c) && d.arc(c, e) && d.arc(a, e);
}

std::optional<FWitness> find_f_witness(const Digraph& d, Mask within) {
    for (Vertex a : members(within))
        for (Vertex b : members(d.out(a) & within))
            for (Vertex c : members(d.out(b) & within & ~bit(a))) {
                Mask ends = d.out(c) & d.out(a) & within & ~bit(b);
                if (ends) return FWitness{a, b, c, std::countr_zero(ends)};
            }
    return std::nullopt;
}

namespace {

struct Construction {
    Cycle gamma, gamma_rest;  // in the contracted digraph
    Vertex y = -1, y_last = -1;
    std::string note;
};

// Builds gamma = P + Q and gamma' = P' + Q' for the labelled pair (y1, z1), splitting
// the first and last trailing cycles at splice vertices and the middle ones anywhere.
std::optional<Construction> build_for_pair(const ContractedDigraph& cd, const Cycle& c, const CycleFactor& trailing,
                                           Vertex y1, Vertex z1) {
    const int p = c.length();
    const Cycle& first = trailing.front();
    const Cycle& last = trailing.back();
    const int c1 = first.length(), cl = last.length();
    const Vertex yl = c.succ(y1), zl = c.succ(z1);
    const int s = forward_distance(c, yl, z1) + 1;  // |P|, P = yl .. z1
    const int need = p - s;                         // |Q|
    int middle = 0;
    for (size_t i = 1; i + 1 < trailing.size(); ++i) middle += trailing[i].length();
    // Q takes `a` vertices of the first cycle (from y, with z1 -> y and y1 -> z, z right after),
    // `b` vertices of the last one (ending at y'), `need - a - b` from the middle cycles.
    for (int a = std::min(c1 - 1, need - 1); a >= 1; --a) {
        int b_lo = std::max(1, need - a - middle), b_hi = std::min(cl - 1, need - a);
        if (b_lo > b_hi) continue;
        auto firsts = splices_into_first(cd, first, z1, y1, a - 1);
        if (firsts.empty()) continue;
        for (int b = b_hi; b >= b_lo; --b) {
            auto lasts = splices_from_last(cd, last, yl, zl, b - 1);
            if (lasts.empty()) continue;
            auto [y, z] = firsts.front();
            auto [yp, zp] = lasts.front();
            std::vector<Vertex> gamma, rest;
            // gamma: P then Q.
            append_walk(gamma, c, yl, s);
            append_walk(gamma, first, y, a);
            int take = need - a - b;
            std::vector<std::pair<const Cycle*, int>> middle_split;  // (cycle, vertices given to Q)
            for (size_t i = 1; i + 1 < trailing.size(); ++i) {
                int q = std::min(take, trailing[i].length());
                middle_split.emplace_back(&trailing[i], q);
                take -= q;
                append_walk(gamma, trailing[i], trailing[i].at(0), q);
            }
            append_walk(gamma, last, last.succ(zp), b);
            // gamma': P' then Q'.
            append_walk(rest, c, zl, p - s);
            append_walk(rest, first, z, c1 - a);
            for (auto [cyc, q] : middle_split) append_walk(rest, *cyc, cyc->at(q), cyc->length() - q);
            append_walk(rest, last, last.succ(yp), cl - b);
            Construction out;
            out.gamma = Cycle{gamma};
            out.gamma_rest = Cycle{rest};
            out.y = y;
            out.y_last = yp;
            out.note = "merge pair=" + std::to_string(y1) + "," + std::to_string(z1) + " s=" + std::to_string(s) +
                       " first_take=" + std::to_string(a) + " last_take=" + std::to_string(b) +
                       " l=" + std::to_string(trailing.size());
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

MergeResult merge_to_two_factor(const Tournament& t, const CycleFactor& f, int index) {
    const Digraph& d = t.digraph();
    const int k = t.k();
    if (index < 0 || index >= static_cast<int>(f.size())) throw std::invalid_argument("merge: bad cycle index");
    if (!is_cycle_factor(d, f, d.all())) throw std::invalid_argument("merge: not a spanning cycle-factor");
    const Cycle& c_host = f[index];
    const int p = c_host.length() / 2;
    if (p < 2 || p > k) throw std::invalid_argument("merge: designated cycle length out of range");

    MergeResult result;
    CycleFactor others;
    for (int i = 0; i < static_cast<int>(f.size()); ++i)
        if (i != index) others.push_back(f[i]);
    if (others.size() == 1) {
        result.first = c_host;
        result.rest = others.front();
        return result;
    }
    if (p == 2) {
        auto found = search_two_factor(t, 2);
        if (!found) throw Falsification("merge: no (4, 4k-4)-cycle-factor found by exhaustive search");
        result.first = found->first;
        result.rest = found->second;
        result.provenance.push_back("merge p=2 via exhaustive base-case search");
        return result;
    }

    const Mask rest_set = d.all() & ~c_host.vertex_set();
    HMOutcome hm = hm_normalize(d, rest_set, others);
    if (hm.hamiltonian) {
        result.first = c_host;
        result.rest = hm.cycle();
        result.provenance.push_back("merge: trailing cycles merged into one hamiltonian cycle");
        return result;
    }
    const CycleFactor& ordered = hm.cycles;
    if (auto bad = arc_count_identity_check(t, c_host, ordered))
        throw Falsification("merge: arc-count identity failed: " + *bad);

    // Pick the side whose weighted arc sums reach half of 4k - (c_1 + c_l).
    const Cycle& first_host = ordered.front();
    const Cycle& last_host = ordered.back();
    const long c1 = first_host.length() / 2, cl = last_host.length() / 2;
    auto side_sum = [&](Mask side) {
        long from_last = 0, into_first = 0;
        for (Vertex x : members(last_host.vertex_set() & side)) from_last += d.out_degree(x, c_host.vertex_set());
        for (Vertex x : members(c_host.vertex_set() & side)) into_first += d.out_degree(x, first_host.vertex_set());
        return c1 * from_last + cl * into_first;  // scaled by c_1 c_l
    };
    const Direction preferred = side_sum(t.side_t()) >= side_sum(t.side_s()) ? Direction::Up : Direction::Down;

    CycleFactor full{c_host};
    full.insert(full.end(), ordered.begin(), ordered.end());
    std::string failures;
    for (Direction dir : {preferred, opposite(preferred)}) {
        PerfectMatching m = factor_matching(t, full, dir);
        ContractedDigraph cd = contract(t, m);
        Cycle c = contract_cycle(cd, c_host);
        CycleFactor trailing = contract_factor(cd, ordered);

        WRAnalysis wr = compute_wr(cd, c, trailing.front(), trailing.back());
        if (dir == preferred && wr.w() + wr.r() < p * (p - 1) / 2)
            throw Falsification("merge: w + r = " + std::to_string(wr.w() + wr.r()) + " below p(p-1)/2");
        auto pairs = bicolored_pairs(wr, c);
        std::optional<Construction> built;
        for (auto [a, b] : pairs) {
            // Shorter P first, then the mirrored labelling.
            Vertex y1 = a, z1 = b;
            if (2 * (forward_distance(c, c.succ(y1), z1) + 1) > p) std::swap(y1, z1);
            built = build_for_pair(cd, c, trailing, y1, z1);
            if (!built) built = build_for_pair(cd, c, trailing, z1, y1);
            if (built) break;
        }
        if (!built) {
            failures += std::string(" side=") + to_string(dir) + " bicolored=" + std::to_string(pairs.size());
            continue;
        }
        result.first = lift(cd, built->gamma);
        result.rest = lift(cd, built->gamma_rest);
        const Vertex y = built->y, yp = built->y_last;
        result.witness = FWitness{y, m(y), yp, m(yp)};
        result.provenance.push_back(std::string("merge side=") + to_string(dir) +
                                    (dir == preferred ? "" : " (fallback side)") + " " + built->note);
        if (!witness_holds(d, *result.witness, result.first.vertex_set()))
            throw Falsification("merge: F-avoidance witness does not hold");
        return result;
    }
    // Consecutive bicolored pairs cannot be realised when p = k; search directly instead.
    const bool avoid = p % 2 == 0 && !is_f_isomorphic(d, c_host.vertex_set());
    if (auto found = search_two_factor(t, p, avoid)) {
        result.first = found->first;
        result.rest = found->second;
        result.witness = avoid ? find_f_witness(d, result.first.vertex_set()) : std::nullopt;
        result.provenance.push_back("merge fallback: exhaustive search after splice failure:" + failures);
        return result;
    }
    throw Falsification("merge: no splice realises a (" + std::to_string(2 * p) + "," + std::to_string(4 * k - 2 * p) +
                        ")-cycle-factor:" + failures);
}

}  // namespace bitour
