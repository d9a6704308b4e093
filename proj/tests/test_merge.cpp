#include <doctest.h>

#include <random>

#include "bitour/factor.hpp"
#include "bitour/merge.hpp"
#include "bitour/oracle.hpp"
#include "bitour/search.hpp"
#include "support.hpp"

using namespace bitour;

namespace {

// A random 2p-cycle whose complement has a spanning cycle-factor, plus that factor.
std::optional<CycleFactor> designated_factor(const Tournament& t, int p, std::mt19937& rng, bool avoid_f) {
    const Digraph& d = t.digraph();
    std::optional<CycleFactor> out;
    const unsigned skip = rng() % 40;
    unsigned seen = 0;
    for_each_cycle(d, d.all(), 2 * p, [&](const Cycle& c) {
        if (avoid_f && is_f_isomorphic(d, c.vertex_set())) return true;
        auto rest = find_cycle_factor(d, d.all() & ~c.vertex_set());
        if (!rest) return true;
        CycleFactor f{c};
        f.insert(f.end(), rest->begin(), rest->end());
        out = f;
        return seen++ < skip;
    });
    return out;
}

}  // namespace

TEST_CASE("merge produces a (2p, 4k-2p) factor keeping F-avoidance") {
    std::mt19937 rng(4);
    int done = 0;
    for (unsigned seed = 0; done < 150; ++seed) {
        const int k = 3 + seed % 3;
        Tournament t = seed % 4 == 0 ? support::near_f(k, 2, seed) : random_regular(k, seed);
        if (is_f_isomorphic(t.digraph(), t.digraph().all())) continue;
        const int p = 2 + static_cast<int>(rng() % (k - 1));
        auto f = designated_factor(t, p, rng, p % 2 == 0 && p >= 4);
        if (!f) continue;
        ++done;
        MergeResult r = merge_to_two_factor(t, *f, 0);
        CHECK(r.first.length() == 2 * p);
        CHECK(r.rest.length() == t.n() - 2 * p);
        CHECK(is_cycle_factor(t.digraph(), {r.first, r.rest}, t.digraph().all()));
        if (p % 2 == 0 && p >= 4) {
            CHECK_FALSE(support::f_by_partition(t.digraph(), r.first.vertex_set(), t.side_s()));
            if (r.witness) CHECK(witness_holds(t.digraph(), *r.witness, r.first.vertex_set()));
        }
    }
}

TEST_CASE("F-witness exists exactly off F") {
    for (int j = 1; j <= 3; ++j) {
        Tournament f = make_f4k(j);
        CHECK_FALSE(find_f_witness(f.digraph(), f.digraph().all()));
    }
    std::mt19937 rng(6);
    int found = 0;
    for (unsigned seed = 0; seed < 200; ++seed) {
        Tournament t = seed % 2 ? support::near_f(3, 1, seed) : random_regular(3, seed);
        std::vector<Vertex> s = members(t.side_s()), tt = members(t.side_t());
        std::shuffle(s.begin(), s.end(), rng);
        std::shuffle(tt.begin(), tt.end(), rng);
        Mask x = 0;
        for (int i = 0; i < 4; ++i) x |= bit(s[i]) | bit(tt[i]);
        const bool is_f = support::f_by_partition(t.digraph(), x, t.side_s());
        auto w = find_f_witness(t.digraph(), x);
        if (is_f) {
            CHECK_FALSE(w);
        } else if (w) {
            ++found;
            CHECK(witness_holds(t.digraph(), *w, x));
        }
    }
    CHECK(found > 0);
}

TEST_CASE("arc count identity on ordered factors") {
    int checked = 0;
    for (unsigned seed = 0; seed < 400 && checked < 30; ++seed) {
        Tournament t = support::near_f(4, 1 + seed % 3, seed);
        std::mt19937 rng(seed);
        auto f = designated_factor(t, 2, rng, false);
        if (!f || f->size() < 3) continue;
        CycleFactor others(f->begin() + 1, f->end());
        ContractedDigraph cd = contract(t, factor_matchings(t, *f).first);
        CycleFactor cothers = contract_factor(cd, others);
        Mask ground = 0;
        for (const Cycle& c : cothers) ground |= c.vertex_set();
        HMOutcome o = hm_normalize(cd.digraph, ground, cothers);
        if (o.hamiltonian) continue;
        ++checked;
        CHECK_FALSE(arc_count_identity_check(t, f->front(), lift(cd, o.cycles)));
    }
}
