#pragma once

// Independent brute-force references used by the tests. Nothing here calls the
// library's search, component or recognition routines.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bitour/core.hpp"

namespace support {

using bitour::Cycle;
using bitour::Digraph;
using bitour::Mask;
using bitour::Vertex;

// Hamiltonian cycle by trying every ordering of the remaining vertices.
inline bool hamiltonian_by_permutation(const Digraph& d, Mask ground) {
    std::vector<Vertex> vs = bitour::members(ground);
    if (vs.size() < 2) return false;
    std::vector<Vertex> rest(vs.begin() + 1, vs.end());
    do {
        Vertex prev = vs[0];
        bool ok = true;
        for (Vertex v : rest) {
            if (!d.arc(prev, v)) {
                ok = false;
                break;
            }
            prev = v;
        }
        if (ok && d.arc(prev, vs[0])) return true;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return false;
}

// Transitive closure by repeated squaring of the relation (Warshall).
inline std::vector<std::vector<bool>> closure(const Digraph& d, Mask within, bool anti) {
    const int n = d.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int u = 0; u < n; ++u) {
        if (!bitour::has(within, u)) continue;
        r[u][u] = true;
        for (int v = 0; v < n; ++v)
            if (v != u && bitour::has(within, v) && (anti ? !d.arc(u, v) : d.arc(u, v))) r[u][v] = true;
    }
    for (int w = 0; w < n; ++w)
        for (int u = 0; u < n; ++u)
            if (r[u][w])
                for (int v = 0; v < n; ++v)
                    if (r[w][v]) r[u][v] = true;
    return r;
}

// Number of initial strong components of d[within] (or its complement).
inline int initial_count(const Digraph& d, Mask within, bool anti) {
    auto r = closure(d, within, anti);
    std::set<Mask> comps;
    for (Vertex u : bitour::members(within)) {
        Mask c = 0;
        for (Vertex v : bitour::members(within))
            if (r[u][v] && r[v][u]) c |= bitour::bit(v);
        comps.insert(c);
    }
    int initial = 0;
    for (Mask c : comps) {
        bool entered = false;
        for (Vertex u : bitour::members(within & ~c))
            for (Vertex v : bitour::members(c))
                if (r[u][v]) entered = true;
        if (!entered) ++initial;
    }
    return initial;
}

inline bool strongly_connected(const Digraph& d, Mask within, bool anti) {
    auto r = closure(d, within, anti);
    for (Vertex u : bitour::members(within))
        for (Vertex v : bitour::members(within))
            if (!r[u][v]) return false;
    return true;
}

// F recognition by trying every split of each side into two halves.
inline bool f_by_partition(const Digraph& d, Mask within, Mask side_s) {
    const int size = bitour::popcount(within);
    if (size == 0 || size % 4) return false;
    const int j = size / 4;
    std::vector<Vertex> ss = bitour::members(within & side_s), ts = bitour::members(within & ~side_s);
    if (static_cast<int>(ss.size()) != 2 * j) return false;
    auto halves = [&](const std::vector<Vertex>& vs) {
        std::vector<Mask> out;
        for (Mask sel = 0; sel < (Mask{1} << vs.size()); ++sel) {
            if (bitour::popcount(sel) != j) continue;
            Mask m = 0;
            for (size_t i = 0; i < vs.size(); ++i)
                if ((sel >> i) & 1U) m |= bitour::bit(vs[i]);
            out.push_back(m);
        }
        return out;
    };
    const Mask s_all = within & side_s, t_all = within & ~side_s;
    auto dominates = [&](Mask a, Mask b) {
        for (Vertex u : bitour::members(a))
            for (Vertex v : bitour::members(b))
                if (!d.arc(u, v) || d.arc(v, u)) return false;
        return true;
    };
    for (Mask k : halves(ss))
        for (Mask l : halves(ts)) {
            Mask m = s_all & ~k, n = t_all & ~l;
            if (dominates(k, l) && dominates(l, m) && dominates(m, n) && dominates(n, k)) return true;
        }
    return false;
}

// All directed cycles of d[within] up to `max_len`, each listed once from its smallest vertex.
inline std::vector<Cycle> all_cycles(const Digraph& d, Mask within, int max_len) {
    std::vector<Cycle> out;
    std::vector<Vertex> path;
    std::function<void(Mask)> grow = [&](Mask used) {
        Vertex last = path.back(), start = path.front();
        if (path.size() >= 2 && d.arc(last, start)) out.push_back(Cycle{path});
        if (static_cast<int>(path.size()) == max_len) return;
        for (Vertex v : bitour::members(within)) {
            if (v <= start || bitour::has(used, v) || !d.arc(last, v)) continue;
            path.push_back(v);
            grow(used | bitour::bit(v));
            path.pop_back();
        }
    };
    for (Vertex s : bitour::members(within)) {
        path = {s};
        grow(bitour::bit(s));
    }
    return out;
}

// F_4k with `flips` random degree-preserving 4-cycle reversals.
inline bitour::Tournament near_f(int k, int flips, unsigned seed) {
    auto rows = bitour::make_f4k(k).matrix();
    std::mt19937 rng(seed);
    const int n = 2 * k;
    for (int done = 0; done < flips;) {
        int a = rng() % n, b = rng() % n, x = rng() % n, y = rng() % n;
        if (a == b || x == y) continue;
        if (rows[a][x] && !rows[b][x] && rows[b][y] && !rows[a][y]) {
            rows[a][x] = false;
            rows[b][x] = true;
            rows[b][y] = false;
            rows[a][y] = true;
            ++done;
        }
    }
    return bitour::Tournament(k, rows);
}

inline Cycle parse_cycle(const std::string& csv) {
    Cycle c;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        c.vertices.push_back(std::stoi(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return c;
}

}  // namespace support
