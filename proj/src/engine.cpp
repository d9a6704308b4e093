#include <algorithm>

#include "bitour/engine.hpp"
#include "bitour/internal.hpp"
#include "bitour/search.hpp"

namespace bitour {

using namespace detail;

Stage base_case(const Tournament& t, int p) {
    auto found = search_two_factor(t, p);
    if (!found) throw Falsification("base case: no (" + std::to_string(2 * p) + "," + std::to_string(t.n() - 2 * p) +
                                    ")-cycle-factor on a non-F instance");
    return Stage{found->first, found->second, {"base p=" + std::to_string(p) + " exhaustive search"}};
}

FactorProperties detect_properties(const Tournament& t, const Cycle& c1, const Cycle& c2) {
    const Digraph& d = t.digraph();
    const Mask c1set = c1.vertex_set();
    FactorProperties props;
    for (int i = 0; i < c2.length(); ++i) {
        Vertex u = c2.at(i), v = c2.at(i + 1);
        if (!(d.in(u) & c1set) || !(d.out(v) & c1set)) continue;
        (has(t.side_s(), v) ? props.p_up : props.p_down) = true;
    }
    for (Direction dir : {Direction::Up, Direction::Down}) {
        Frame f = make_frame(t, c1, c2, dir);
        bool q = initial_components(f.g(), f.cp.vertex_set(), true).size() == 1;
        (dir == Direction::Up ? props.q_up : props.q_down) = q;
    }
    props.c2_is_f = is_f_isomorphic(d, c2.vertex_set());
    if (!props.q_up && !props.q_down && !props.c2_is_f)
        throw Falsification("properties: neither Q_up, Q_down nor D[C_2] = F");
    if (!props.p_up && !props.p_down) throw Falsification("properties: no arc uv of C_2 with the P pattern");
    for (Direction dir : {Direction::Up, Direction::Down}) {
        bool p_other = dir == Direction::Up ? props.p_down : props.p_up;
        if (p_other) continue;
        Frame f = make_frame(t, c1, c2, dir);
        const Mask cset = f.c.vertex_set();
        for (Vertex x : f.cp.vertices)
            if ((f.g().out(x) & cset) && (f.g().in(x) & cset))
                throw Falsification(std::string("properties: P fails on the side opposite to ") + to_string(dir) +
                                    " yet vertex " + std::to_string(x) + " has arcs both ways with C");
    }
    return props;
}

namespace {

Stage dispatch(const Tournament& t, const Stage& s, std::vector<std::string>& log) {
    FactorProperties props = detect_properties(t, s.first, s.rest);
    const Direction x = props.p_up ? Direction::Up : Direction::Down;
    const Direction y = opposite(x);
    auto q_of = [&](Direction d) { return d == Direction::Up ? props.q_up : props.q_down; };
    auto p_of = [&](Direction d) { return d == Direction::Up ? props.p_up : props.p_down; };
    log.push_back(std::string("extend p=") + std::to_string(s.q()) + " P_up=" + std::to_string(props.p_up) +
                  " P_down=" + std::to_string(props.p_down) + " Q_up=" + std::to_string(props.q_up) +
                  " Q_down=" + std::to_string(props.q_down) + " C2=F:" + std::to_string(props.c2_is_f));
    if (q_of(x)) return case_a(make_frame(t, s.first, s.rest, x), log);
    if (props.c2_is_f) {
        // The side whose complemented C has a unique initial component is the one the argument needs.
        std::vector<Direction> order{x, y};
        if (initial_components(make_frame(t, s.first, s.rest, x).g(),
                               make_frame(t, s.first, s.rest, x).c.vertex_set(), true).size() != 1)
            std::swap(order[0], order[1]);
        std::optional<Falsification> first_failure;
        for (Direction d : order) {
            std::vector<std::string> local = log;
            try {
                Stage out = case_b(make_frame(t, s.first, s.rest, d), local);
                log = local;
                return out;
            } catch (const Falsification& e) {
                if (!first_failure) first_failure = e;
            }
        }
        throw *first_failure;
    }
    if (p_of(y)) {
        if (!q_of(y)) throw Falsification("dispatch: P on the other side without Q there", log);
        return case_a(make_frame(t, s.first, s.rest, y), log);
    }
    return case_c(make_frame(t, s.first, s.rest, x), log);
}

}  // namespace

Stage extend(const Tournament& t, const Stage& s) {
    const int p = s.q();
    if (p < 3 || p >= t.k()) throw InvalidInput("extend: stage size must satisfy 3 <= p < k");
    if (!is_good(t, s, p)) throw InvalidInput("extend: input stage is not a good cycle-factor");
    std::vector<std::string> log = s.provenance;
    Stage out = dispatch(t, s, log);
    if (!is_good(t, out, p + 1))
        throw Falsification("extend: result is not a good (" + std::to_string(2 * p + 2) + ")-cycle-factor", log);
    return out;
}

SolveResult solve(const Tournament& t, int p, const SolveOptions& options) {
    if (auto v = validate(t)) throw InvalidInput("invalid instance: " + v->invariant);
    const int k = t.k();
    if (p < 2 || p > 2 * k - 2)
        throw InvalidInput("p=" + std::to_string(p) + " outside [2, " + std::to_string(2 * k - 2) + "]");
    if (is_f_isomorphic(t.digraph(), t.digraph().all())) return Excluded{};
    const int q = std::min(p, 2 * k - p);

    Stage stage = base_case(t, std::min(q, 3));
    while (stage.q() < q) {
        const int next = stage.q() + 1;
        Stage out;
        if (next == 4) {
            std::vector<std::string> log = stage.provenance;
            out = dispatch(t, stage, log);
            const bool factor = out.first.length() == 8 && out.rest.length() == t.n() - 8 &&
                                is_cycle_factor(t.digraph(), {out.first, out.rest}, t.digraph().all());
            if (factor && !is_good(t, out, 4)) {
                auto alt = search_two_factor(t, 4, true);
                if (!alt) throw Falsification("anchor: every 8-cycle with hamiltonian complement induces F", log);
                log.push_back("anchor: produced 8-cycle induces F, replaced by search");
                out = Stage{alt->first, alt->second, log};
            }
            if (!is_good(t, out, 4)) throw Falsification("extend: result is not a good 8-cycle-factor", log);
        } else {
            out = extend(t, stage);
        }
        if (options.check_chain) out.provenance.push_back("chain q=" + std::to_string(next) + " verified");
        stage = out;
    }

    TwoFactorCertificate cert;
    cert.k = k;
    cert.p = p;
    cert.cycle_2p = p <= k ? stage.first : stage.rest;
    cert.cycle_rest = p <= k ? stage.rest : stage.first;
    const Mask first = stage.first.vertex_set();
    cert.f_avoided = !is_f_isomorphic(t.digraph(), first);
    if (cert.f_avoided) cert.witness = find_f_witness(t.digraph(), first);
    cert.provenance = stage.provenance;
    return cert;
}

}  // namespace bitour
