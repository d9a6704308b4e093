#pragma once

// Helpers shared by the engine translation units.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitour/engine.hpp"

namespace bitour::detail {

Stage stage_from_merge(const Tournament& t, const CycleFactor& host, int index, std::vector<std::string>& log);

// Shortest anti-path inside `within` from some source to some target.
std::optional<std::vector<Vertex>> anti_path_between(const Digraph& g, Mask within, Mask sources, Mask targets);

std::vector<std::pair<Vertex, Vertex>> cycle_arcs(const Cycle& c);
bool same_component(const std::vector<Mask>& comps, Vertex a, Vertex b);

std::optional<Stage> digon_exchange(const Frame& f, Vertex a, Vertex x, Vertex c, Vertex t,
                                    std::vector<std::string>& log);
std::optional<Stage> find_digon_exchange(const Frame& f, std::vector<std::string>& log);

std::vector<std::pair<Vertex, Vertex>> external_arcs(const Frame& f);
std::optional<Stage> try_external_arcs(const Frame& f, std::vector<std::string>& log);

// Good anti-cycle, then extendingC.
std::optional<Stage> generic_finish(const Frame& f, std::vector<std::string>& log);

}  // namespace bitour::detail
