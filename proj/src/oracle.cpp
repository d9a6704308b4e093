#include "bitour/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace bitour {

// ---------------------------------------------------------------- F and hamiltonicity

bool oracle_is_f(const Digraph& d, Mask within, Mask side_s) {
    const int size = popcount(within);
    if (size == 0 || size % 4 != 0) return false;
    const int j = size / 4;
    const Mask xs = within & side_s, xt = within & ~side_s;
    if (popcount(xs) != 2 * j) return false;
    // K is the out-class of the first S-vertex, L its out-neighbourhood.
    const Vertex s0 = std::countr_zero(xs);
    const Mask l = d.out(s0) & xt, n = xt & ~l;
    Mask k = 0;
    for (Vertex v : members(xs))
        if ((d.out(v) & xt) == l) k |= bit(v);
    const Mask m = xs & ~k;
    if (popcount(k) != j || popcount(l) != j || popcount(m) != j || popcount(n) != j) return false;
    auto all_arcs = [&](Mask from, Mask to) {
        for (Vertex u : members(from))
            if ((d.out(u) & to) != to || (d.in(u) & to)) return false;
        return true;
    };
    return all_arcs(k, l) && all_arcs(l, m) && all_arcs(m, n) && all_arcs(n, k);
}

std::optional<Cycle> oracle_hamiltonian(const Digraph& d, Mask ground) {
    std::vector<Vertex> vs = members(ground);
    const int n = static_cast<int>(vs.size());
    if (n < 2) return std::nullopt;
    if (n > kOracleMaxVertices) throw InvalidInput("oracle hamiltonicity limited to 24 vertices");
    // dp[mask] over vertices 1..n-1: bit e set iff a path vs[0] -> ... -> vs[e] visits exactly mask.
    const int m = n - 1;
    std::vector<std::uint32_t> dp(std::size_t{1} << m, 0);
    auto arc = [&](int a, int b) { return d.arc(vs[a], vs[b]); };
    for (int e = 1; e < n; ++e)
        if (arc(0, e)) dp[std::size_t{1} << (e - 1)] |= 1U << e;
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        for (int e = 1; e < n; ++e) {
            if (!((ends >> e) & 1U)) continue;
            for (int f = 1; f < n; ++f)
                if (!((mask >> (f - 1)) & 1U) && arc(e, f)) dp[mask | (std::size_t{1} << (f - 1))] |= 1U << f;
        }
    }
    const std::size_t full = dp.size() - 1;
    int last = -1;
    for (int e = 1; e < n && last < 0; ++e)
        if (((dp[full] >> e) & 1U) && arc(e, 0)) last = e;
    if (last < 0) return std::nullopt;
    std::vector<Vertex> rev;
    std::size_t mask = full;
    int cur = last;
    while (cur != 0) {
        rev.push_back(vs[cur]);
        const std::size_t prev_mask = mask & ~(std::size_t{1} << (cur - 1));
        int prev = -1;
        if (prev_mask == 0) {
            prev = 0;
        } else {
            for (int e = 1; e < n && prev < 0; ++e)
                if (((dp[prev_mask] >> e) & 1U) && arc(e, cur)) prev = e;
        }
        mask = prev_mask;
        cur = prev;
    }
    rev.push_back(vs[0]);
    std::reverse(rev.begin(), rev.end());
    return Cycle{rev};
}

// ---------------------------------------------------------------- verification

namespace {

std::optional<Violation> check_cycle(const Digraph& d, const Cycle& c, int length, const char* name) {
    if (c.length() != length)
        return Violation{std::string(name) + " has length " + std::to_string(c.length()) + ", expected " +
                             std::to_string(length),
                         {}};
    Mask seen = 0;
    for (Vertex v : c.vertices) {
        if (v < 0 || v >= d.size()) return Violation{std::string(name) + " names a vertex out of range", {v}};
        if (has(seen, v)) return Violation{std::string(name) + " repeats a vertex", {v}};
        seen |= bit(v);
    }
    for (int i = 0; i < length; ++i) {
        Vertex u = c.vertices[i], v = c.vertices[(i + 1) % length];
        if (!d.arc(u, v)) return Violation{std::string(name) + " uses a missing arc", {u, v}};
    }
    return std::nullopt;
}

}  // namespace

std::optional<Violation> verify_two_factor(const Tournament& t, const TwoFactorCertificate& cert) {
    const Digraph& d = t.digraph();
    const int k = t.k(), p = cert.p;
    if (cert.k != k) return Violation{"certificate k does not match the instance", {}};
    if (p < 2 || p > 2 * k - 2) return Violation{"p out of range", {}};
    if (auto v = check_cycle(d, cert.cycle_2p, 2 * p, "cycle_2p")) return v;
    if (auto v = check_cycle(d, cert.cycle_rest, 4 * k - 2 * p, "cycle_rest")) return v;
    const Mask a = cert.cycle_2p.vertex_set(), b = cert.cycle_rest.vertex_set();
    if (a & b) return Violation{"cycles intersect", members(a & b)};
    if ((a | b) != d.all()) return Violation{"cycles do not span the instance", members(d.all() & ~(a | b))};

    const int q = std::min(p, 2 * k - p);
    const Cycle& small = p <= k ? cert.cycle_2p : cert.cycle_rest;
    const Mask sset = small.vertex_set();
    const bool is_f = oracle_is_f(d, sset, t.side_s());
    if (cert.f_avoided == is_f) return Violation{"F-avoidance flag disagrees with the first cycle", {}};
    if (q % 2 == 0 && q >= 4) {
        if (is_f) return Violation{"F-avoidance", small.vertices};
        if (!cert.witness) return Violation{"F-avoidance witness missing", {}};
    }
    if (cert.witness) {
        const auto& w = *cert.witness;
        std::vector<Vertex> ws(w.begin(), w.end());
        for (Vertex v : ws)
            if (v < 0 || v >= d.size() || !has(sset, v)) return Violation{"witness leaves the first cycle", ws};
        if (popcount(mask_of(ws)) != 4) return Violation{"witness repeats a vertex", ws};
        if (!d.arc(w[0], w[1]) || !d.arc(w[1], w[2]) || !d.arc(w[2], w[3]) || !d.arc(w[0], w[3]))
            return Violation{"witness arcs missing", ws};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- brute force

std::optional<std::pair<Cycle, Cycle>> brute_force_two_factor(const Tournament& t, int p) {
    const Digraph& d = t.digraph();
    const int n = t.n();
    if (n > kOracleMaxVertices) throw InvalidInput("brute force limited to 4k <= 24");
    if (p < 1 || 2 * p > n - 2) throw InvalidInput("p out of range for brute force");
    const int len = 2 * p;
    std::unordered_map<Mask, std::optional<Cycle>> complement_cache;
    std::optional<std::pair<Cycle, Cycle>> found;
    std::vector<Vertex> path;
    // Cycles start at their smallest vertex; later vertices are larger.
    std::function<void(Mask)> grow = [&](Mask used) {
        if (found) return;
        const Vertex start = path.front(), last = path.back();
        if (static_cast<int>(path.size()) == len) {
            if (!d.arc(last, start)) return;
            const Mask rest = d.all() & ~used;
            auto it = complement_cache.find(rest);
            if (it == complement_cache.end()) it = complement_cache.emplace(rest, oracle_hamiltonian(d, rest)).first;
            if (it->second) found = std::pair{Cycle{path}, *it->second};
            return;
        }
        for (Vertex v = start + 1; v < n; ++v) {
            if (has(used, v) || !d.arc(last, v)) continue;
            path.push_back(v);
            grow(used | bit(v));
            path.pop_back();
            if (found) return;
        }
    };
    for (Vertex s = 0; s < n && !found; ++s) {
        path = {s};
        grow(bit(s));
    }
    return found;
}

// ---------------------------------------------------------------- enumeration

Tournament tournament_from_rows(int k, const RowMatrix& rows) {
    std::vector<std::vector<bool>> m(2 * k, std::vector<bool>(2 * k));
    for (int i = 0; i < 2 * k; ++i)
        for (int j = 0; j < 2 * k; ++j) m[i][j] = (rows[i] >> j) & 1U;
    return Tournament(k, m);
}

namespace {

void check_enumeration_k(int k) {
    if (k < 1 || k > kEnumerationMaxK) throw InvalidInput("exhaustive enumeration supports 1 <= k <= 3");
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

RowMatrix canonical_form(int k, const RowMatrix& rows) {
    const int m = 2 * k;
    static thread_local int cached_k = -1;
    static thread_local std::vector<std::vector<std::uint32_t>> tables;  // tables[perm][row] = permuted row
    if (cached_k != k) {
        tables.clear();
        for (const auto& perm : all_permutations(m)) {
            std::vector<std::uint32_t> table(std::size_t{1} << m);
            for (std::uint32_t r = 0; r < table.size(); ++r) {
                std::uint32_t out = 0;
                for (int j = 0; j < m; ++j)
                    if ((r >> j) & 1U) out |= 1U << perm[j];
                table[r] = out;
            }
            tables.push_back(std::move(table));
        }
        cached_k = k;
    }
    RowMatrix best, cur(m);
    for (const auto& table : tables) {
        for (int i = 0; i < m; ++i) cur[i] = table[rows[i]];
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    }
    return best;
}

void enumerate_instances(int k, bool up_to_iso, const std::function<void(const RowMatrix&)>& visit) {
    check_enumeration_k(k);
    const int m = 2 * k;
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t r = 0; r < (1U << m); ++r)
        if (std::popcount(r) == k) candidates.push_back(r);
    RowMatrix rows;
    std::vector<int> col(m, 0);
    std::function<void()> rec = [&]() {
        const int i = static_cast<int>(rows.size());
        if (i == m) {
            if (!up_to_iso || canonical_form(k, rows) == rows) visit(rows);
            return;
        }
        const int left_after = m - i - 1;
        for (std::uint32_t r : candidates) {
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                const int c = col[j] + static_cast<int>((r >> j) & 1U);
                ok = c <= k && c + left_after >= k;
            }
            if (!ok) continue;
            for (int j = 0; j < m; ++j) col[j] += (r >> j) & 1U;
            rows.push_back(r);
            rec();
            rows.pop_back();
            for (int j = 0; j < m; ++j) col[j] -= (r >> j) & 1U;
        }
    };
    rec();
}

std::vector<RowMatrix> enumerate_instances(int k, bool up_to_iso) {
    std::vector<RowMatrix> out;
    enumerate_instances(k, up_to_iso, [&](const RowMatrix& r) { out.push_back(r); });
    return out;
}

std::uint64_t count_instances_naive(int k) {
    check_enumeration_k(k);
    const int m = 2 * k;
    std::vector<int> row(m, 0), col(m, 0);
    std::function<std::uint64_t(int)> rec = [&](int cell) -> std::uint64_t {
        if (cell == m * m) return 1;
        const int i = cell / m, j = cell % m;
        std::uint64_t total = 0;
        for (int bitv = 0; bitv <= 1; ++bitv) {
            row[i] += bitv;
            col[j] += bitv;
            const bool row_ok = row[i] <= k && (j < m - 1 || row[i] == k);
            const bool col_ok = col[j] <= k && (i < m - 1 || col[j] == k);
            if (row_ok && col_ok) total += rec(cell + 1);
            row[i] -= bitv;
            col[j] -= bitv;
        }
        return total;
    };
    return rec(0);
}

// ---------------------------------------------------------------- exhaustive runs

const char* to_string(InstanceStatus s) {
    switch (s) {
        case InstanceStatus::Solved: return "solved";
        case InstanceStatus::Excluded: return "excluded";
        case InstanceStatus::Falsified: return "falsified";
    }
    return "?";
}

void EnumerationReport::add(const InstanceOutcome& o) {
    ++total;
    switch (o.status) {
        case InstanceStatus::Solved: ++solved; break;
        case InstanceStatus::Excluded: ++excluded; break;
        case InstanceStatus::Falsified:
            ++falsified;
            failures.push_back(o);
            break;
    }
}

void EnumerationReport::merge(const EnumerationReport& other) {
    total += other.total;
    solved += other.solved;
    excluded += other.excluded;
    falsified += other.falsified;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string EnumerationReport::summary() const {
    std::ostringstream os;
    os << "summary k=" << k << " total=" << total << " solved=" << solved << " excluded=" << excluded
       << " falsified=" << falsified << " ms=" << static_cast<long long>(elapsed_ms) << (resumed ? " resumed" : "");
    return os.str();
}

std::string format_outcome(const InstanceOutcome& o) {
    std::ostringstream os;
    os << "idx=" << o.index << " status=" << to_string(o.status) << " p=" << o.p << " ms=" << o.ms;
    return os.str();
}

namespace {

InstanceOutcome run_one(const Tournament& t, std::uint64_t index, int p) {
    InstanceOutcome o;
    o.index = index;
    o.p = p;
    const auto start = std::chrono::steady_clock::now();
    try {
        SolveResult r = solve(t, p);
        if (std::holds_alternative<Excluded>(r)) {
            o.status = InstanceStatus::Excluded;
        } else if (auto v = verify_two_factor(t, std::get<TwoFactorCertificate>(r))) {
            o.status = InstanceStatus::Falsified;
            o.detail = "verification: " + v->invariant;
        }
    } catch (const Falsification& e) {
        o.status = InstanceStatus::Falsified;
        o.detail = e.what();
    }
    o.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return o;
}

struct Cursor {
    std::string header;
    std::set<std::uint64_t> done;
    EnumerationReport counts;
};

Cursor load_cursor(const std::string& path, const std::string& header) {
    Cursor c;
    c.header = header;
    std::ifstream in(path);
    if (!in) return c;
    std::string line;
    if (!std::getline(in, line)) return c;
    if (line != header) throw InvalidInput("cursor file " + path + " belongs to a different run: " + line);
    while (std::getline(in, line)) {
        std::istringstream is(line);
        std::string tag;
        is >> tag;
        if (tag == "chunk") {
            std::uint64_t id, total, solved, excluded, falsified;
            if (!(is >> id >> total >> solved >> excluded >> falsified)) break;  // torn last line
            c.done.insert(id);
            c.counts.total += total;
            c.counts.solved += solved;
            c.counts.excluded += excluded;
            c.counts.falsified += falsified;
        } else if (tag == "fail") {
            InstanceOutcome o;
            o.status = InstanceStatus::Falsified;
            is >> o.index >> o.p;
            std::getline(is, o.detail);
            if (!o.detail.empty() && o.detail.front() == ' ') o.detail.erase(0, 1);
            c.counts.failures.push_back(o);
        }
    }
    return c;
}

}  // namespace

EnumerationReport run_exhaustive(int k, int p_lo, int p_hi, const ExhaustiveOptions& options) {
    check_enumeration_k(k);
    if (p_lo < 2 || p_hi > 2 * k - 2 || p_lo > p_hi) throw InvalidInput("p range outside [2, 2k-2]");
    if (options.workers < 1 || options.chunk < 1) throw InvalidInput("workers and chunk must be positive");
    const auto start = std::chrono::steady_clock::now();
    std::vector<RowMatrix> instances = enumerate_instances(k);
    const std::uint64_t count = options.limit ? std::min<std::uint64_t>(*options.limit, instances.size())
                                              : instances.size();
    const std::uint64_t chunks = (count + options.chunk - 1) / options.chunk;

    std::ostringstream hs;
    hs << "cursor k=" << k << " p=" << p_lo << ".." << p_hi << " chunk=" << options.chunk << " instances=" << count;
    Cursor cursor;
    std::ofstream log;
    if (!options.cursor_path.empty()) {
        cursor = load_cursor(options.cursor_path, hs.str());
        const bool fresh = cursor.done.empty() && cursor.counts.failures.empty();
        log.open(options.cursor_path, fresh ? std::ios::trunc : std::ios::app);
        if (!log) throw InvalidInput("cannot write cursor file " + options.cursor_path);
        if (fresh) log << hs.str() << "\n" << std::flush;
    }

    EnumerationReport report = cursor.counts;
    report.k = k;
    report.resumed = !cursor.done.empty();
    std::vector<std::uint64_t> todo;
    for (std::uint64_t c = 0; c < chunks; ++c)
        if (!cursor.done.count(c)) todo.push_back(c);

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    auto work = [&]() {
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= todo.size()) return;
            const std::uint64_t c = todo[slot];
            EnumerationReport part;
            std::vector<InstanceOutcome> outcomes;
            for (std::uint64_t i = c * options.chunk; i < std::min(count, (c + 1) * options.chunk); ++i) {
                Tournament t = tournament_from_rows(k, instances[i]);
                for (int p = p_lo; p <= p_hi; ++p) {
                    InstanceOutcome o = run_one(t, i, p);
                    part.add(o);
                    outcomes.push_back(std::move(o));
                }
            }
            std::lock_guard lock(mu);
            report.merge(part);
            if (options.on_outcome)
                for (const auto& o : outcomes) options.on_outcome(o);
            if (log.is_open()) {
                for (const auto& f : part.failures) log << "fail " << f.index << " " << f.p << " " << f.detail << "\n";
                log << "chunk " << c << " " << part.total << " " << part.solved << " " << part.excluded << " "
                    << part.falsified << "\n"
                    << std::flush;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < options.workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace bitour
