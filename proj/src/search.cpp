#include "bitour/search.hpp"

#include "bitour/factor.hpp"

namespace bitour {

void for_each_cycle(const Digraph& d, Mask within, int length, const std::function<bool(const Cycle&)>& visit) {
    if (length < 2) return;
    std::vector<Vertex> path;
    bool stop = false;
    auto extend = [&](auto&& self, Mask used, Mask allowed) -> void {
        Vertex last = path.back();
        if (static_cast<int>(path.size()) == length) {
            if (d.arc(last, path.front()) && !visit(Cycle{path})) stop = true;
            return;
        }
        for (Vertex v : members(d.out(last) & allowed & ~used)) {
            path.push_back(v);
            self(self, used | bit(v), allowed);
            path.pop_back();
            if (stop) return;
        }
    };
    for (Vertex start : members(within)) {
        // Only vertices larger than the start may follow it, so each cycle is produced once.
        Mask allowed = within & ~((bit(start) << 1) - 1);
        path.assign(1, start);
        extend(extend, bit(start), allowed);
        if (stop) return;
    }
}

std::optional<Cycle> hamiltonian_in_bipartite_tournament(const Digraph& d, Mask ground) {
    if (!is_strong(d, ground)) return std::nullopt;
    auto f = find_cycle_factor(d, ground);
    if (!f) return std::nullopt;
    HMOutcome out = hm_normalize(d, ground, *f);
    if (!out.hamiltonian) throw Falsification("strong bipartite tournament with a cycle-factor was not made hamiltonian");
    return out.cycle();
}

std::optional<std::pair<Cycle, Cycle>> search_two_factor(const Tournament& t, int p, bool avoid_f) {
    const Digraph& d = t.digraph();
    const Mask all = d.all();
    std::optional<std::pair<Cycle, Cycle>> found;
    for_each_cycle(d, all, 2 * p, [&](const Cycle& c) {
        if (avoid_f && is_f_isomorphic(d, c.vertex_set())) return true;
        auto rest = hamiltonian_in_bipartite_tournament(d, all & ~c.vertex_set());
        if (!rest) return true;
        found.emplace(c, *rest);
        return false;
    });
    return found;
}

}  // namespace bitour
