#include "bitour/core.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace bitour {

std::vector<Vertex> members(Mask m) {
    std::vector<Vertex> out;
    out.reserve(popcount(m));
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

Mask mask_of(const std::vector<Vertex>& vs) {
    Mask m = 0;
    for (Vertex v : vs) m |= bit(v);
    return m;
}

std::string join_ids(const std::vector<Vertex>& vs, char sep) {
    std::string s;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(vs[i]);
    }
    return s;
}

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(int n) : n_(n), out_(n, 0), in_(n, 0) {
    if (n < 0 || n > kMaxVertices) throw InvalidInput("digraph size out of range: " + std::to_string(n));
}

void Digraph::add_arc(Vertex u, Vertex v) {
    if (u == v) throw std::logic_error("self-loop");
    out_[u] |= bit(v);
    in_[v] |= bit(u);
}

void Digraph::remove_arc(Vertex u, Vertex v) {
    out_[u] &= ~bit(v);
    in_[v] &= ~bit(u);
}

int Digraph::arcs_between(Mask from, Mask to) const {
    int total = 0;
    for (Vertex u : members(from)) total += popcount(out_[u] & to);
    return total;
}

Digraph Digraph::induced_complement(Mask within) const {
    Digraph c(n_);
    for (Vertex u : members(within))
        for (Vertex v : members(anti_out(u, within))) c.add_arc(u, v);
    return c;
}

Digraph Digraph::reversed() const {
    Digraph r(n_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : members(out_[u])) r.add_arc(v, u);
    return r;
}

// ---------------------------------------------------------------- Cycle

Vertex Cycle::at(int i) const {
    const int len = length();
    return vertices[((i % len) + len) % len];
}

int Cycle::index_of(Vertex v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw std::logic_error("vertex " + std::to_string(v) + " not on cycle");
    return static_cast<int>(it - vertices.begin());
}

Vertex Cycle::succ(Vertex v) const { return at(index_of(v) + 1); }
Vertex Cycle::pred(Vertex v) const { return at(index_of(v) - 1); }

Cycle normalized(Cycle c) {
    if (c.vertices.empty()) return c;
    auto it = std::min_element(c.vertices.begin(), c.vertices.end());
    std::rotate(c.vertices.begin(), it, c.vertices.end());
    return c;
}

std::string cycle_defect(const Digraph& d, const Cycle& c, int min_length) {
    if (c.length() < min_length) return "cycle shorter than " + std::to_string(min_length);
    Mask seen = 0;
    for (Vertex v : c.vertices) {
        if (v < 0 || v >= d.size()) return "vertex id out of range: " + std::to_string(v);
        if (has(seen, v)) return "repeated vertex " + std::to_string(v);
        seen |= bit(v);
    }
    for (int i = 0; i < c.length(); ++i) {
        Vertex u = c.at(i), v = c.at(i + 1);
        if (!d.arc(u, v)) return "missing arc " + std::to_string(u) + "->" + std::to_string(v);
    }
    return {};
}

bool is_cycle(const Digraph& d, const Cycle& c, int min_length) { return cycle_defect(d, c, min_length).empty(); }

bool is_cycle_factor(const Digraph& d, const CycleFactor& f, Mask ground) {
    Mask covered = 0;
    for (const Cycle& c : f) {
        if (!is_cycle(d, c)) return false;
        Mask vs = c.vertex_set();
        if (vs & covered) return false;
        covered |= vs;
    }
    return covered == ground;
}

std::vector<Vertex> successor_map(int n, const CycleFactor& f) {
    std::vector<Vertex> succ(n, -1);
    for (const Cycle& c : f)
        for (int i = 0; i < c.length(); ++i) succ[c.at(i)] = c.at(i + 1);
    return succ;
}

CycleFactor cycles_of(const std::vector<Vertex>& succ, Mask ground) {
    CycleFactor f;
    Mask left = ground;
    while (left) {
        Vertex start = std::countr_zero(left);
        Cycle c;
        Vertex v = start;
        do {
            if (v < 0 || !has(left, v)) throw std::logic_error("successor map is not a permutation of the ground set");
            c.vertices.push_back(v);
            left &= ~bit(v);
            v = succ[v];
        } while (v != start);
        f.push_back(std::move(c));
    }
    return f;
}

// ---------------------------------------------------------------- Tournament

Tournament::Tournament(int k, const std::vector<std::vector<bool>>& rows) : k_(k), d_(4 * k) {
    if (k < 1 || 4 * k > kMaxVertices) throw InvalidInput("k out of range: " + std::to_string(k));
    if (static_cast<int>(rows.size()) != 2 * k) throw InvalidInput("matrix must have 2k rows");
    for (int i = 0; i < 2 * k; ++i) {
        if (static_cast<int>(rows[i].size()) != 2 * k) throw InvalidInput("matrix must have 2k columns");
        for (int j = 0; j < 2 * k; ++j) {
            if (rows[i][j])
                d_.add_arc(i, 2 * k + j);
            else
                d_.add_arc(2 * k + j, i);
        }
    }
}

Tournament::Tournament(int k, Digraph d) : k_(k), d_(std::move(d)) {
    if (d_.size() != 4 * k) throw InvalidInput("digraph size does not match 4k");
}

std::vector<std::vector<bool>> Tournament::matrix() const {
    std::vector<std::vector<bool>> rows(2 * k_, std::vector<bool>(2 * k_));
    for (int i = 0; i < 2 * k_; ++i)
        for (int j = 0; j < 2 * k_; ++j) rows[i][j] = d_.arc(i, 2 * k_ + j);
    return rows;
}

std::optional<Violation> validate_raw(const Digraph& d, Mask side_a, Mask side_b, int k) {
    if (popcount(side_a) != 2 * k || popcount(side_b) != 2 * k || (side_a & side_b) ||
        (side_a | side_b) != d.all())
        return Violation{"side sizes", members(side_a ^ side_b)};
    for (Vertex u = 0; u < d.size(); ++u) {
        if (d.arc(u, u)) return Violation{"self-loop", {u}};
        Mask same = has(side_a, u) ? side_a : side_b;
        if (d.out(u) & same) return Violation{"arc within a side", {u, std::countr_zero(d.out(u) & same)}};
    }
    for (Vertex u : members(side_a))
        for (Vertex v : members(side_b))
            if (d.arc(u, v) == d.arc(v, u)) return Violation{"not a bipartite tournament", {u, v}};
    for (Vertex u = 0; u < d.size(); ++u) {
        if (popcount(d.out(u)) != k) return Violation{"out-degree != k", {u}};
        if (popcount(d.in(u)) != k) return Violation{"in-degree != k", {u}};
    }
    return std::nullopt;
}

std::optional<Violation> validate(const Tournament& t) {
    if (t.k() < 1) return Violation{"k < 1", {}};
    return validate_raw(t.digraph(), t.side_s(), t.side_t(), t.k());
}

Tournament parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("k ", 0) != 0) throw InvalidInput("first line must be 'k <k>'");
    int k = 0;
    try {
        size_t used = 0;
        k = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) throw InvalidInput("trailing characters after k");
    } catch (const std::logic_error&) {
        throw InvalidInput("malformed k");
    }
    if (k < 1 || 4 * k > kMaxVertices) throw InvalidInput("k out of supported range");
    if (text.empty() || text.back() != '\n') throw InvalidInput("missing trailing newline");
    std::vector<std::vector<bool>> rows;
    for (int i = 0; i < 2 * k; ++i) {
        if (!std::getline(in, line)) throw InvalidInput("too few matrix rows");
        if (static_cast<int>(line.size()) != 2 * k) throw InvalidInput("row " + std::to_string(i) + " has wrong length");
        std::vector<bool> row;
        for (char ch : line) {
            if (ch != '0' && ch != '1') throw InvalidInput(std::string("unexpected character '") + ch + "'");
            row.push_back(ch == '1');
        }
        rows.push_back(std::move(row));
    }
    if (std::getline(in, line)) throw InvalidInput("extra content after matrix");
    return Tournament(k, rows);
}

std::string format_instance(const Tournament& t) {
    std::string s = "k " + std::to_string(t.k()) + "\n";
    for (const auto& row : t.matrix()) {
        for (bool b : row) s += b ? '1' : '0';
        s += '\n';
    }
    return s;
}

// ---------------------------------------------------------------- F_{4k}

Tournament make_f4k(int k) {
    if (k < 1) throw InvalidInput("make_f4k requires k >= 1");
    if (4 * k > kMaxVertices) throw InvalidInput("k too large");
    // S = K (rows 0..k-1) and M (rows k..2k-1); T = L (cols 0..k-1) and N (cols k..2k-1).
    // K -> L and M -> N; otherwise the T vertex points back (L -> M, N -> K).
    std::vector<std::vector<bool>> rows(2 * k, std::vector<bool>(2 * k, false));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            rows[i][j] = true;
            rows[k + i][k + j] = true;
        }
    return Tournament(k, rows);
}

namespace {

// Groups the vertices of `within` by their exact out-neighborhood inside `within`.
std::map<Mask, Mask> out_classes(const Digraph& d, Mask within) {
    std::map<Mask, Mask> classes;
    for (Vertex v : members(within)) classes[d.out(v) & within] |= bit(v);
    return classes;
}

}  // namespace

bool is_f_isomorphic(const Digraph& d, Mask within, RecognitionMode mode) {
    const int size = popcount(within);
    const int parts = mode == RecognitionMode::F ? 4 : 2;
    if (size == 0 || size % parts != 0) return false;
    auto classes = out_classes(d, within);
    if (static_cast<int>(classes.size()) != parts) return false;
    // Every class must have size |V|/parts and point at exactly one other class,
    // the classes forming a single directed cycle under that map.
    std::map<Mask, Mask> next;  // class members -> out-neighborhood
    for (auto [outset, cls] : classes) {
        if (popcount(cls) != size / parts) return false;
        next[cls] = outset;
    }
    for (auto [cls, outset] : next)
        if (!next.count(outset)) return false;
    Mask start = next.begin()->first, cur = start;
    for (int i = 0; i < parts; ++i) {
        cur = next[cur];
        if (cur == start && i != parts - 1) return false;
    }
    return cur == start;
}

// ---------------------------------------------------------------- generator

Tournament random_regular(int k, std::uint64_t seed) {
    if (k < 1 || 4 * k > kMaxVertices) throw InvalidInput("k out of range");
    const int m = 2 * k;
    std::vector<std::vector<bool>> rows(m, std::vector<bool>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rows[i][j] = ((j - i + m) % m) < k;
    std::mt19937_64 rng(seed);
    const int steps = 40 * m * m;
    for (int step = 0; step < steps; ++step) {
        int i1 = static_cast<int>(rng() % m), i2 = static_cast<int>(rng() % m);
        int j1 = static_cast<int>(rng() % m), j2 = static_cast<int>(rng() % m);
        if (i1 == i2 || j1 == j2) continue;
        if (rows[i1][j1] && !rows[i1][j2] && !rows[i2][j1] && rows[i2][j2]) {
            rows[i1][j1] = rows[i2][j2] = false;
            rows[i1][j2] = rows[i2][j1] = true;
        }
    }
    return Tournament(k, rows);
}

// ---------------------------------------------------------------- reachability

Mask reachable(const Digraph& d, Mask subset, Vertex from, bool anti) {
    Mask seen = bit(from), frontier = bit(from);
    while (frontier) {
        Mask next = 0;
        for (Vertex u : members(frontier)) next |= anti ? d.anti_out(u, subset) : (d.out(u) & subset);
        frontier = next & ~seen;
        seen |= frontier;
    }
    return seen;
}

std::optional<std::vector<Vertex>> find_path(const Digraph& d, Mask subset, Vertex from, Vertex to, bool anti) {
    if (!has(subset, from) || !has(subset, to)) throw std::logic_error("find_path endpoints outside subset");
    if (from == to) return std::vector<Vertex>{from};
    std::vector<Vertex> parent(d.size(), -1);
    Mask seen = bit(from);
    std::vector<Vertex> queue{from};
    for (size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        Mask nbrs = (anti ? d.anti_out(u, subset) : (d.out(u) & subset)) & ~seen;
        for (Vertex v : members(nbrs)) {
            seen |= bit(v);
            parent[v] = u;
            if (v == to) {
                std::vector<Vertex> path{to};
                while (path.back() != from) path.push_back(parent[path.back()]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(v);
        }
    }
    return std::nullopt;
}

std::vector<Mask> strong_components(const Digraph& d, Mask subset, bool complemented) {
    const std::vector<Vertex> vs = members(subset);
    std::vector<Mask> reach(d.size(), 0);
    for (Vertex v : vs) reach[v] = reachable(d, subset, v, complemented);
    std::vector<std::pair<Mask, Mask>> comps;  // (component, its reach set)
    Mask left = subset;
    for (Vertex v : vs) {
        if (!has(left, v)) continue;
        Mask comp = 0;
        for (Vertex u : members(reach[v]))
            if (has(reach[u], v)) comp |= bit(u);
        left &= ~comp;
        comps.emplace_back(comp, reach[v]);
    }
    // A component reaching another has a strictly larger reach set.
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return popcount(a.second) > popcount(b.second); });
    std::vector<Mask> out;
    for (auto& [c, r] : comps) out.push_back(c);
    return out;
}

bool is_strong(const Digraph& d, Mask subset, bool complemented) {
    if (!subset) return false;
    const Vertex root = std::countr_zero(subset);
    if (reachable(d, subset, root, complemented) != subset) return false;
    Mask seen = bit(root), frontier = bit(root);
    while (frontier) {
        Mask next = 0;
        for (Vertex u : members(frontier)) next |= complemented ? d.anti_in(u, subset) : (d.in(u) & subset);
        frontier = next & ~seen;
        seen |= frontier;
    }
    return seen == subset;
}

namespace {

Mask successors_of_set(const Digraph& d, Mask set, Mask subset, bool complemented) {
    Mask out = 0;
    for (Vertex u : members(set)) out |= complemented ? d.anti_out(u, subset) : (d.out(u) & subset);
    return out;
}

Mask predecessors_of_set(const Digraph& d, Mask set, Mask subset, bool complemented) {
    Mask in = 0;
    for (Vertex u : members(set)) in |= complemented ? d.anti_in(u, subset) : (d.in(u) & subset);
    return in;
}

}  // namespace

std::vector<Mask> initial_components(const Digraph& d, Mask subset, bool complemented) {
    std::vector<Mask> out;
    for (Mask c : strong_components(d, subset, complemented))
        if (!(predecessors_of_set(d, c, subset, complemented) & ~c)) out.push_back(c);
    return out;
}

std::vector<Mask> terminal_components(const Digraph& d, Mask subset, bool complemented) {
    std::vector<Mask> out;
    for (Mask c : strong_components(d, subset, complemented))
        if (!(successors_of_set(d, c, subset, complemented) & ~c)) out.push_back(c);
    return out;
}

}  // namespace bitour
