#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bitour/certificate.hpp"
#include "bitour/oracle.hpp"
#include "support.hpp"

using namespace bitour;

TEST_CASE("enumeration counts agree across both methods") {
    // the two 2x2 permutation matrices; both are F_4
    CHECK(enumerate_instances(1).size() == 2);
    CHECK(count_instances_naive(1) == 2);
    CHECK(enumerate_instances(1, true).size() == 1);
    CHECK(enumerate_instances(2).size() == 90);
    CHECK(count_instances_naive(2) == 90);
    std::uint64_t streamed = 0;
    enumerate_instances(3, false, [&](const RowMatrix& r) {
        ++streamed;
        for (auto row : r) CHECK_EQ(std::popcount(row), 3);
    });
    CHECK(streamed == count_instances_naive(3));
    CHECK(streamed == 297200);
    CHECK_THROWS_AS(enumerate_instances(4), InvalidInput);
}

TEST_CASE("every enumerated instance is valid and distinct") {
    std::set<RowMatrix> seen;
    for (const auto& rows : enumerate_instances(2)) {
        CHECK_FALSE(validate(tournament_from_rows(2, rows)));
        CHECK(seen.insert(rows).second);
    }
}

TEST_CASE("isomorphism classes for k = 2") {
    auto reps = enumerate_instances(2, true);
    // every labeled instance maps to exactly one representative
    std::set<RowMatrix> canon;
    for (const auto& rows : enumerate_instances(2)) canon.insert(canonical_form(2, rows));
    CHECK(canon.size() == reps.size());
    for (const auto& r : reps) CHECK(canon.count(r) == 1);
}

TEST_CASE("brute force on F instances") {
    // F_12 has no (6,6)-factor
    CHECK_FALSE(brute_force_two_factor(make_f4k(3), 3));
    // F_8 has two 4-cycles, each meeting every class once
    Tournament f8 = make_f4k(2);
    auto r = brute_force_two_factor(f8, 2);
    REQUIRE(r);
    // classes of make_f4k(2): K = {0,1}, M = {2,3}, L = {4,5}, N = {6,7}
    for (const Cycle* c : {&r->first, &r->second}) {
        const Mask s = c->vertex_set();
        CHECK(popcount(s & 0b11) == 1);
        CHECK(popcount(s & 0b1100) == 1);
        CHECK(popcount(s & 0b110000) == 1);
        CHECK(popcount(s & 0b11000000) == 1);
    }
    CHECK_THROWS_AS(brute_force_two_factor(random_regular(7, 1), 2), InvalidInput);
}

TEST_CASE("verification catches broken certificates") {
    Tournament t = random_regular(4, 12);
    auto r = solve(t, 4);
    REQUIRE(std::holds_alternative<TwoFactorCertificate>(r));
    TwoFactorCertificate cert = std::get<TwoFactorCertificate>(r);
    CHECK_FALSE(verify_two_factor(t, cert));

    auto reversed = cert;
    std::swap(reversed.cycle_2p.vertices[0], reversed.cycle_2p.vertices[1]);
    auto v = verify_two_factor(t, reversed);
    REQUIRE(v);
    CHECK(v->invariant.find("arc") != std::string::npos);

    auto wrong_len = cert;
    wrong_len.cycle_rest.vertices.pop_back();
    CHECK(verify_two_factor(t, wrong_len));

    auto no_witness = cert;
    no_witness.witness.reset();
    CHECK(verify_two_factor(t, no_witness));

    auto lying = cert;
    lying.f_avoided = false;
    CHECK(verify_two_factor(t, lying));
}

TEST_CASE("F-avoidance violation on an F_8 inside a larger host") {
    // Two copies of F_8 side by side, glued regularly: rows of F_8 blocks on the diagonal,
    // each S vertex additionally beats half of the other block.
    const int k = 4;
    std::vector<std::vector<bool>> rows(8, std::vector<bool>(8, false));
    auto f = make_f4k(2).matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            rows[i][j] = f[i][j];
            rows[4 + i][4 + j] = f[i][j];
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            rows[i][4 + j] = (i + j) % 2 == 0;
            rows[4 + i][j] = (i + j) % 2 == 1;
        }
    Tournament t(k, rows);
    REQUIRE_FALSE(validate(t));
    // first block: S = 0..3, T = 8..11
    Mask block = 0;
    for (Vertex v : {0, 1, 2, 3, 8, 9, 10, 11}) block |= bit(v);
    REQUIRE(oracle_is_f(t.digraph(), block, t.side_s()));
    auto c1 = oracle_hamiltonian(t.digraph(), block);
    auto c2 = oracle_hamiltonian(t.digraph(), t.digraph().all() & ~block);
    REQUIRE(c1);
    REQUIRE(c2);
    TwoFactorCertificate cert;
    cert.k = k;
    cert.p = 4;
    cert.cycle_2p = *c1;
    cert.cycle_rest = *c2;
    cert.f_avoided = false;
    auto v = verify_two_factor(t, cert);
    REQUIRE(v);
    CHECK(v->invariant == "F-avoidance");
}

TEST_CASE("certificate json round trip") {
    Tournament t = random_regular(5, 3);
    auto cert = std::get<TwoFactorCertificate>(solve(t, 4));
    auto back = certificate_from_json(certificate_to_json(cert));
    CHECK(back.k == cert.k);
    CHECK(back.p == cert.p);
    CHECK(back.cycle_2p == cert.cycle_2p);
    CHECK(back.cycle_rest == cert.cycle_rest);
    CHECK(back.witness == cert.witness);
    CHECK(back.provenance == cert.provenance);
    CHECK_FALSE(verify_two_factor(t, back));
    CHECK_THROWS_AS(certificate_from_json("{"), InvalidInput);
    CHECK_THROWS_AS(certificate_from_json(R"({"k":2})"), InvalidInput);
}

TEST_CASE("exhaustive run for k = 2 and resumption") {
    EnumerationReport full = run_exhaustive(2, 2, 2);
    CHECK(full.total == 90);
    CHECK(full.falsified == 0);
    CHECK(full.excluded == 18);
    CHECK(full.solved + full.excluded + full.falsified == full.total);

    const std::string cursor = (std::filesystem::temp_directory_path() / "bitour_cursor_test.txt").string();
    std::filesystem::remove(cursor);
    ExhaustiveOptions first;
    first.chunk = 10;
    first.cursor_path = cursor;
    first.limit = 40;
    EnumerationReport part = run_exhaustive(2, 2, 2, first);
    CHECK(part.total == 40);
    // Same run again: all chunks already recorded.
    EnumerationReport again = run_exhaustive(2, 2, 2, first);
    CHECK(again.resumed);
    CHECK(again.total == 40);
    CHECK(again.solved == part.solved);
    // Drop the last recorded chunk and resume.
    {
        std::ifstream in(cursor);
        std::vector<std::string> lines;
        for (std::string l; std::getline(in, l);) lines.push_back(l);
        lines.pop_back();
        std::ofstream out(cursor, std::ios::trunc);
        for (const auto& l : lines) out << l << "\n";
    }
    int redone = 0;
    first.on_outcome = [&](const InstanceOutcome&) { ++redone; };
    EnumerationReport resumed = run_exhaustive(2, 2, 2, first);
    CHECK(redone == 10);
    CHECK(resumed.total == 40);
    CHECK(resumed.solved == part.solved);

    ExhaustiveOptions other;
    other.cursor_path = cursor;
    CHECK_THROWS_AS(run_exhaustive(2, 2, 2, other), InvalidInput);
    std::filesystem::remove(cursor);
}

TEST_CASE("workers produce the same totals") {
    ExhaustiveOptions one, four;
    one.limit = four.limit = 3000;
    four.workers = 4;
    four.chunk = 250;
    auto a = run_exhaustive(3, 2, 3, one), b = run_exhaustive(3, 2, 3, four);
    CHECK(a.total == b.total);
    CHECK(a.solved == b.solved);
    CHECK(a.excluded == b.excluded);
    CHECK(a.falsified == 0);
    CHECK(b.falsified == 0);
}

TEST_CASE("report line format") {
    InstanceOutcome o;
    o.index = 7;
    o.p = 3;
    o.status = InstanceStatus::Excluded;
    o.ms = 0.5;
    CHECK(format_outcome(o) == "idx=7 status=excluded p=3 ms=0.5");
}
