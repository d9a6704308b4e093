#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitour {

// Vertex sets are 64-bit masks; every digraph handled here has at most 64 vertices.
using Mask = std::uint64_t;
using Vertex = int;

constexpr int kMaxVertices = 64;

inline Mask bit(Vertex v) { return Mask{1} << v; }
inline bool has(Mask m, Vertex v) { return (m >> v) & 1U; }
inline int popcount(Mask m) { return std::popcount(m); }
inline Mask range_mask(int lo, int hi) {
    Mask m = 0;
    for (int v = lo; v < hi; ++v) m |= bit(v);
    return m;
}
std::vector<Vertex> members(Mask m);
Mask mask_of(const std::vector<Vertex>& vs);

// Raised on malformed input (bad instance text, bad certificate, out-of-range argument).
class InvalidInput : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Raised when a construction step reaches a state that should be impossible for a
// valid non-F instance. Carries the replayable provenance collected so far.
class Falsification : public std::runtime_error {
   public:
    Falsification(const std::string& what, std::vector<std::string> provenance = {})
        : std::runtime_error(what), provenance_(std::move(provenance)) {}
    const std::vector<std::string>& provenance() const { return provenance_; }

   private:
    std::vector<std::string> provenance_;
};

class Digraph {
   public:
    Digraph() = default;
    explicit Digraph(int n);

    int size() const { return n_; }
    Mask all() const { return n_ == 64 ? ~Mask{0} : (bit(n_) - 1); }

    bool arc(Vertex u, Vertex v) const { return has(out_[u], v); }
    void add_arc(Vertex u, Vertex v);
    void remove_arc(Vertex u, Vertex v);

    Mask out(Vertex u) const { return out_[u]; }
    Mask in(Vertex u) const { return in_[u]; }
    // Anti-neighborhoods inside `within`, excluding the vertex itself.
    Mask anti_out(Vertex u, Mask within) const { return within & ~out_[u] & ~bit(u); }
    Mask anti_in(Vertex u, Mask within) const { return within & ~in_[u] & ~bit(u); }

    int out_degree(Vertex u, Mask within) const { return popcount(out_[u] & within); }
    int in_degree(Vertex u, Mask within) const { return popcount(in_[u] & within); }

    // e(A,B): number of arcs from A to B.
    int arcs_between(Mask from, Mask to) const;

    Digraph induced_complement(Mask within) const;
    Digraph reversed() const;

    bool operator==(const Digraph&) const = default;

   private:
    int n_ = 0;
    std::vector<Mask> out_;
    std::vector<Mask> in_;
};

// A directed cycle, stored as the cyclic vertex sequence.
struct Cycle {
    std::vector<Vertex> vertices;

    int length() const { return static_cast<int>(vertices.size()); }
    Mask vertex_set() const { return mask_of(vertices); }
    Vertex at(int i) const;  // cyclic index
    // Successor/predecessor of v along the cycle; v must lie on it.
    Vertex succ(Vertex v) const;
    Vertex pred(Vertex v) const;
    int index_of(Vertex v) const;
    bool operator==(const Cycle&) const = default;
};

using CycleFactor = std::vector<Cycle>;

// Rotates so that the smallest id comes first (orientation is fixed by the arcs).
Cycle normalized(Cycle c);

// Returns an empty string when `c` is a cycle of `d` with distinct vertices and
// length >= min_length; otherwise a description of the first defect.
std::string cycle_defect(const Digraph& d, const Cycle& c, int min_length = 2);
bool is_cycle(const Digraph& d, const Cycle& c, int min_length = 2);
// Cycles pairwise disjoint, each valid, union exactly `ground`.
bool is_cycle_factor(const Digraph& d, const CycleFactor& f, Mask ground);
// Successor map of a factor: succ[v] for covered v, -1 elsewhere.
std::vector<Vertex> successor_map(int n, const CycleFactor& f);
// Decomposes a successor permutation restricted to `ground` into cycles.
CycleFactor cycles_of(const std::vector<Vertex>& succ, Mask ground);

// k-regular bipartite tournament on 4k vertices: side S = ids [0,2k), side T = ids [2k,4k).
class Tournament {
   public:
    Tournament() = default;
    // Builds from the S->T orientation matrix: rows[i][j] true iff s_i -> t_j.
    Tournament(int k, const std::vector<std::vector<bool>>& rows);
    // Wraps an arbitrary digraph with the given side split; validity is not checked.
    Tournament(int k, Digraph d);

    int k() const { return k_; }
    int n() const { return 4 * k_; }
    const Digraph& digraph() const { return d_; }
    bool arc(Vertex u, Vertex v) const { return d_.arc(u, v); }
    Mask side_s() const { return range_mask(0, 2 * k_); }
    Mask side_t() const { return range_mask(2 * k_, 4 * k_); }
    Mask side_of(Vertex v) const { return v < 2 * k_ ? side_s() : side_t(); }
    Mask other_side(Mask side) const { return side == side_s() ? side_t() : side_s(); }

    std::vector<std::vector<bool>> matrix() const;
    bool operator==(const Tournament&) const = default;

   private:
    int k_ = 0;
    Digraph d_;
};

struct Violation {
    std::string invariant;
    std::vector<Vertex> witnesses;
};

// Checks every defining property of a k-regular bipartite tournament.
std::optional<Violation> validate(const Tournament& t);

// Text format: "k <k>\n" followed by 2k rows of 2k characters in {0,1}, each newline-terminated.
Tournament parse_instance(const std::string& text);
std::string format_instance(const Tournament& t);

// Checks a raw side-split digraph (possibly with unequal side sizes) against the
// k-regular bipartite tournament definition; used for near-regular fixtures.
std::optional<Violation> validate_raw(const Digraph& d, Mask side_a, Mask side_b, int k);

Tournament make_f4k(int k);

enum class RecognitionMode { F, CompleteBipartite };

// Mode F: is d[within] isomorphic to F_{|within|}?
// Mode CompleteBipartite: is d[within] the balanced complete bipartite digraph
// (two equal independent classes, all arcs in both directions between them)?
bool is_f_isomorphic(const Digraph& d, Mask within, RecognitionMode mode = RecognitionMode::F);

Tournament random_regular(int k, std::uint64_t seed);

// Strong components of d[subset] (or of its complement when `complemented`) in a
// topological order of the condensation: no arc from a later component to an earlier one.
std::vector<Mask> strong_components(const Digraph& d, Mask subset, bool complemented = false);
bool is_strong(const Digraph& d, Mask subset, bool complemented = false);
// Components with no incoming (initial) / outgoing (terminal) condensation arcs.
std::vector<Mask> initial_components(const Digraph& d, Mask subset, bool complemented);
std::vector<Mask> terminal_components(const Digraph& d, Mask subset, bool complemented);

// Shortest path (or anti-path when `anti`) inside `subset` from `from` to `to`.
std::optional<std::vector<Vertex>> find_path(const Digraph& d, Mask subset, Vertex from, Vertex to, bool anti);
inline std::optional<std::vector<Vertex>> find_anti_path(const Digraph& d, Mask subset, Vertex from, Vertex to) {
    return find_path(d, subset, from, to, true);
}
// Vertices reachable from `from` inside subset (including itself).
Mask reachable(const Digraph& d, Mask subset, Vertex from, bool anti);

std::string join_ids(const std::vector<Vertex>& vs, char sep = ',');

}  // namespace bitour
