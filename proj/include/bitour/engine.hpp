#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bitour/merge.hpp"
#include "bitour/rewiring.hpp"

namespace bitour {

struct TwoFactorCertificate {
    int k = 0;
    int p = 0;         // as requested; cycle_2p has length 2p
    Cycle cycle_2p;
    Cycle cycle_rest;  // length 4k - 2p
    // About the cycle of length 2 min(p, 2k - p): true when it does not induce F.
    bool f_avoided = false;
    std::optional<FWitness> witness;
    std::vector<std::string> provenance;
};

struct Excluded {};

using SolveResult = std::variant<TwoFactorCertificate, Excluded>;

struct SolveOptions {
    // Re-verify every intermediate factor of the induction chain.
    bool check_chain = false;
};

// (2p, 4k - 2p)-cycle-factor of a k-regular bipartite tournament, 2 <= p <= 2k - 2.
// Throws InvalidInput on bad arguments and Falsification when a proof step fails.
SolveResult solve(const Tournament& t, int p, const SolveOptions& options = {});

// A 2-cycle-factor (first of length 2q) together with the log of how it was built.
struct Stage {
    Cycle first;
    Cycle rest;
    std::vector<std::string> provenance;
    int q() const { return first.length() / 2; }
};

// True when `s` is a (2q, 4k - 2q)-cycle-factor whose first cycle avoids F for even q >= 4.
bool is_good(const Tournament& t, const Stage& s, int q);

Stage base_case(const Tournament& t, int p);

struct FactorProperties {
    bool p_up = false, p_down = false;
    bool q_up = false, q_down = false;
    bool c2_is_f = false;
};

FactorProperties detect_properties(const Tournament& t, const Cycle& c1, const Cycle& c2);

// One of the two contracted views of a 2-cycle-factor: c = C_1^M, cp = C_2^M.
struct Frame {
    const Tournament* t = nullptr;
    ContractedDigraph cd;
    Cycle c, cp;

    const Digraph& g() const { return cd.digraph; }
    Direction dir() const { return cd.matching.direction; }
    int p() const { return c.length(); }
};

Frame make_frame(const Tournament& t, const Cycle& c1, const Cycle& c2, Direction dir);
// Frame over an arbitrary contracted 2-cycle-factor.
Frame make_frame(const ContractedDigraph& cd, const Cycle& c, const Cycle& cp);

// Good cycle-factor of the next size from a stage of size p, 3 <= p < k.
Stage extend(const Tournament& t, const Stage& s);

// Finishing moves; each returns a good (p+1)-stage or nullopt when its pattern is absent.
std::optional<Stage> good_anti_cycle(const Frame& f, const AntiCycle& h, std::vector<std::string>& log);
std::optional<AntiCycle> find_good_anti_cycle(const Frame& f);
std::optional<Stage> claim_extending_c(const Frame& f, Vertex a, Vertex b, Vertex c, Vertex x, Vertex y,
                                       std::vector<std::string>& log);
std::optional<Stage> find_extending_c(const Frame& f, std::vector<std::string>& log);
// Lifts `group` (contracted cycles, p + 1 vertices in total) into one host cycle and
// merges the remaining lifted cycles.
std::optional<Stage> somme_cf(const Tournament& t, const ContractedDigraph& cd, const CycleFactor& group,
                              const CycleFactor& rest, std::vector<std::string>& log);
std::optional<Stage> claim_external_arc(const Frame& f, Vertex a, Vertex b, std::vector<std::string>& log);

Stage case_a(const Frame& f, std::vector<std::string>& log);
Stage case_b(const Frame& f, std::vector<std::string>& log);
Stage case_c(const Frame& f, std::vector<std::string>& log, int depth = 0);

}  // namespace bitour
