#include <doctest.h>

#include <random>

#include "bitour/factor.hpp"
#include "bitour/rewiring.hpp"
#include "support.hpp"

using namespace bitour;

namespace {

std::optional<AntiCycle> random_anti_cycle(const ContractedDigraph& cd, std::mt19937& rng) {
    const Digraph& g = cd.digraph;
    std::vector<Vertex> vs = members(cd.vertices);
    std::vector<Vertex> path{vs[rng() % vs.size()]};
    Mask used = bit(path[0]);
    for (int step = 0; step < 12; ++step) {
        Vertex last = path.back();
        Mask options = g.anti_out(last, cd.vertices) & ~used;
        if (path.size() >= 2 && !g.arc(last, path[0]) && rng() % 3 == 0) return AntiCycle{path};
        if (!options) break;
        std::vector<Vertex> opts = members(options);
        Vertex v = opts[rng() % opts.size()];
        path.push_back(v);
        used |= bit(v);
    }
    if (path.size() >= 2 && !g.arc(path.back(), path[0])) return AntiCycle{path};
    return std::nullopt;
}

}  // namespace

TEST_CASE("switch permutes contracted out-neighbourhoods") {
    std::mt19937 rng(3);
    int trials = 0;
    for (unsigned seed = 0; trials < 2000; ++seed) {
        Tournament t = random_regular(2 + seed % 6, seed);
        Direction dir = seed % 2 ? Direction::Up : Direction::Down;
        ContractedDigraph cd = contract(t, find_matching(t, dir));
        auto ac = random_anti_cycle(cd, rng);
        if (!ac) continue;
        ++trials;
        CHECK(anti_cycle_defect(cd, *ac).empty());
        std::vector<std::string> log;
        PerfectMatching m2 = switch_matching(cd.matching, cd, *ac, &log);
        CHECK(matching_defect(t, m2).empty());
        CHECK(log.size() == 1);
        ContractedDigraph cd2 = contract(t, m2);
        const int len = ac->length();
        Mask moved = 0;
        for (int i = 0; i < len; ++i) {
            Vertex ui = ac->vertices[i], prev = ac->vertices[(i + len - 1) % len];
            moved |= bit(ui);
            CHECK(cd2.digraph.out(ui) == cd.digraph.out(prev));
            CHECK(m2(ui) == cd.matching(prev));
        }
        for (Vertex v : members(cd.vertices & ~moved)) {
            CHECK(cd2.digraph.out(v) == cd.digraph.out(v));
            CHECK(m2(v) == cd.matching(v));
        }
    }
}

TEST_CASE("switch rejects non anti-cycles") {
    Tournament t = random_regular(3, 1);
    ContractedDigraph cd = contract(t, find_matching(t, Direction::Up));
    Vertex u = std::countr_zero(cd.vertices);
    Vertex v = std::countr_zero(cd.digraph.out(u) & cd.vertices);
    AntiCycle bad{{u, v}};
    CHECK_FALSE(anti_cycle_defect(cd, bad).empty());
    CHECK_THROWS_AS(switch_matching(cd.matching, cd, bad), std::invalid_argument);
    CHECK_FALSE(anti_cycle_defect(cd, AntiCycle{{u}}).empty());
}

TEST_CASE("switched factor is a factor of the new contraction") {
    std::mt19937 rng(8);
    int checked = 0;
    for (unsigned seed = 0; checked < 300; ++seed) {
        Tournament t = random_regular(3 + seed % 4, seed);
        ContractedDigraph cd = contract(t, find_matching(t, Direction::Up));
        auto f = find_cycle_factor(cd.digraph, cd.vertices);
        auto ac = random_anti_cycle(cd, rng);
        if (!f || !ac) continue;
        ++checked;
        CycleFactor f2 = switch_factor(*f, *ac, cd);
        ContractedDigraph cd2 = contract(t, switch_matching(cd.matching, cd, *ac));
        CHECK(is_cycle_factor(cd2.digraph, f2, cd2.vertices));
        CHECK(is_cycle_factor(t.digraph(), lift(cd2, f2), t.digraph().all()));
    }
}
