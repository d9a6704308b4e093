#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitour/engine.hpp"

namespace bitour {

// Everything here is implemented without the solver's search routines so it can
// serve as ground truth for them.

// Definition-level F check: |X| = 4j, the X-vertices of each side split into two
// classes of j vertices with complementary out-neighbourhoods of size j.
bool oracle_is_f(const Digraph& d, Mask within, Mask side_s);

// Hamiltonicity of d[ground] by subset dynamic programming.
std::optional<Cycle> oracle_hamiltonian(const Digraph& d, Mask ground);

// Checks lengths, disjointness, spanning, arcs, F-avoidance flag and witness.
std::optional<Violation> verify_two_factor(const Tournament& t, const TwoFactorCertificate& cert);

constexpr int kOracleMaxVertices = 24;

// Exact existence of a (2p, 4k - 2p)-cycle-factor; throws InvalidInput when 4k > 24.
std::optional<std::pair<Cycle, Cycle>> brute_force_two_factor(const Tournament& t, int p);

// One instance per row-mask vector; row i has bit j set iff s_i -> t_j.
using RowMatrix = std::vector<std::uint32_t>;

Tournament tournament_from_rows(int k, const RowMatrix& rows);

constexpr int kEnumerationMaxK = 3;

// All labeled instances (2k x 2k 0/1 matrices with every line sum k), in lexicographic
// row order. With `up_to_iso`, only matrices equal to their canonical form under row and
// column permutations are kept. Throws InvalidInput for k > 3.
void enumerate_instances(int k, bool up_to_iso, const std::function<void(const RowMatrix&)>& visit);
std::vector<RowMatrix> enumerate_instances(int k, bool up_to_iso = false);

// Independent count of the same matrices by cell-by-cell recursion.
std::uint64_t count_instances_naive(int k);

RowMatrix canonical_form(int k, const RowMatrix& rows);

enum class InstanceStatus { Solved, Excluded, Falsified };
const char* to_string(InstanceStatus s);

struct InstanceOutcome {
    std::uint64_t index = 0;
    int p = 0;
    InstanceStatus status = InstanceStatus::Solved;
    double ms = 0;
    std::string detail;  // violation or falsification message
};

struct EnumerationReport {
    int k = 0;
    std::uint64_t total = 0;  // instance/p pairs
    std::uint64_t solved = 0, excluded = 0, falsified = 0;
    std::vector<InstanceOutcome> failures;
    double elapsed_ms = 0;
    bool resumed = false;

    void add(const InstanceOutcome& o);
    void merge(const EnumerationReport& other);
    std::string summary() const;
};

std::string format_outcome(const InstanceOutcome& o);

struct ExhaustiveOptions {
    int workers = 1;
    std::uint64_t chunk = 2000;
    std::string cursor_path;  // empty: not resumable
    std::optional<std::uint64_t> limit;  // process only this many instances
    std::function<void(const InstanceOutcome&)> on_outcome;  // called under a lock
};

// Solves every labeled instance for every p in [p_lo, p_hi]; a solved outcome counts only
// after verify_two_factor accepts it (otherwise it is reported as falsified).
EnumerationReport run_exhaustive(int k, int p_lo, int p_hi, const ExhaustiveOptions& options = {});

}  // namespace bitour
