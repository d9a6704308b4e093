#include <doctest.h>

#include "bitour/factor.hpp"
#include "bitour/oracle.hpp"
#include "bitour/search.hpp"
#include "support.hpp"

using namespace bitour;

namespace {

Digraph random_digraph(int n, int density, std::mt19937& rng) {
    Digraph d(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && static_cast<int>(rng() % 10) < density) d.add_arc(u, v);
    return d;
}

// Spanning cycle-factor existence by trying every successor permutation.
bool factor_by_permutation(const Digraph& d) {
    std::vector<int> perm(d.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < d.size() && ok; ++u) ok = d.arc(u, perm[u]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST_CASE("hamiltonicity by dynamic programming matches permutations") {
    std::mt19937 rng(1);
    int hamiltonian = 0;
    for (int trial = 0; trial < 600; ++trial) {
        Digraph d = random_digraph(2 + trial % 7, 3 + trial % 5, rng);
        bool expected = support::hamiltonian_by_permutation(d, d.all());
        auto dp = hamiltonian_cycle_dp(d, d.all());
        auto oracle = oracle_hamiltonian(d, d.all());
        CHECK(dp.has_value() == expected);
        CHECK(oracle.has_value() == expected);
        if (dp) CHECK(is_cycle(d, *dp));
        if (oracle) CHECK(is_cycle(d, *oracle));
        if (dp && dp->length() == d.size()) ++hamiltonian;
    }
    CHECK(hamiltonian > 50);
}

TEST_CASE("cycle factors exist exactly when a successor permutation does") {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        Digraph d = random_digraph(2 + trial % 6, 2 + trial % 4, rng);
        auto f = find_cycle_factor(d, d.all());
        CHECK(f.has_value() == factor_by_permutation(d));
        if (f) CHECK(is_cycle_factor(d, *f, d.all()));
    }
}

TEST_CASE("hm normalisation on contracted digraphs") {
    for (unsigned seed = 0; seed < 80; ++seed) {
        Tournament t = seed % 3 ? random_regular(2 + seed % 4, seed) : support::near_f(2 + seed % 4, 1, seed);
        for (Direction dir : {Direction::Up, Direction::Down}) {
            ContractedDigraph cd = contract(t, find_matching(t, dir));
            const Digraph& g = cd.digraph;
            auto f = find_cycle_factor(g, cd.vertices);
            REQUIRE(f);
            HMOutcome o = hm_normalize(g, cd.vertices, *f);
            CHECK(is_cycle_factor(g, o.cycles, cd.vertices));
            if (o.hamiltonian) {
                CHECK(o.cycles.size() == 1);
            } else {
                CHECK(dominance_ordered(g, o.cycles));
                for (size_t i = 0; i < o.cycles.size(); ++i)
                    for (size_t j = i + 1; j < o.cycles.size(); ++j)
                        CHECK(g.arcs_between(o.cycles[j].vertex_set(), o.cycles[i].vertex_set()) == 0);
            }
            if (support::strongly_connected(g, cd.vertices, false)) CHECK(o.hamiltonian);
        }
    }
}

TEST_CASE("dominance check rejects backward arcs") {
    Digraph d(4);
    d.add_arc(0, 1);
    d.add_arc(1, 0);
    d.add_arc(2, 3);
    d.add_arc(3, 2);
    d.add_arc(0, 2);
    Cycle a{{0, 1}}, b{{2, 3}};
    CHECK(dominance_ordered(d, {a, b}));
    CHECK_FALSE(dominance_ordered(d, {b, a}));
    HMOutcome o = hm_normalize(d, d.all(), {b, a});
    CHECK_FALSE(o.hamiltonian);
    CHECK(o.cycles.front() == a);
}

TEST_CASE("merge_pair joins cycles with crossing arcs") {
    Tournament t = random_regular(4, 3);
    ContractedDigraph cd = contract(t, find_matching(t, Direction::Up));
    auto f = find_cycle_factor(cd.digraph, cd.vertices);
    REQUIRE(f);
    if (f->size() >= 2) {
        auto m = merge_pair(cd.digraph, (*f)[0], (*f)[1]);
        const bool union_ham = support::hamiltonian_by_permutation(cd.digraph, (*f)[0].vertex_set() | (*f)[1].vertex_set());
        CHECK(m.has_value() == union_ham);
    }
}

TEST_CASE("bipartite tournament hamiltonicity and search") {
    for (unsigned seed = 0; seed < 40; ++seed) {
        Tournament t = random_regular(2 + seed % 3, seed);
        auto h = hamiltonian_in_bipartite_tournament(t.digraph(), t.digraph().all());
        CHECK(h.has_value() == oracle_hamiltonian(t.digraph(), t.digraph().all()).has_value());
        for (int p = 2; p <= t.k(); ++p) {
            auto s = search_two_factor(t, p);
            auto b = brute_force_two_factor(t, p);
            CHECK(s.has_value() == b.has_value());
        }
    }
}

TEST_CASE("hm normalisation when no chain of cycles splices but the component does") {
    Digraph g(6);
    const std::vector<std::vector<Vertex>> out{{2, 4, 5}, {2, 3, 4}, {1, 3, 5}, {0, 1, 4}, {0, 3, 5}, {0, 1, 2}};
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v : out[u]) g.add_arc(u, v);
    CycleFactor f{Cycle{{0, 5}}, Cycle{{1, 2}}, Cycle{{3, 4}}};
    HMOutcome h = hm_normalize(g, g.all(), f);
    REQUIRE(h.hamiltonian);
    CHECK(is_cycle(g, h.cycle()));
    CHECK(h.cycle().length() == 6);
}
