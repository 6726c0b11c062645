#pragma once

#include "streamchroma/graph.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace streamchroma {

/// Everything chosen while removing one friendly almost-clique, enough to
/// invert the removal later.
struct ReedTransformEntry {
    enum class Variant {
        Edge,         // pair found, {x, y} added to the graph
        NoEdge,       // some D vertex below full degree; the s z pair suffices
        AdjacentPair, // f(S) not independent; x and y already adjacent
    };

    uint32_t clique = 0; // summary clique index
    Variant variant = Variant::Edge;
    Vertex s = kNoVertex;
    std::vector<Vertex> d_set;                         // D_i, sorted
    std::vector<std::pair<Vertex, Vertex>> f_map;      // (u, f(u)) for u in D_i
    std::vector<Vertex> s_set;                         // S_i
    std::vector<Vertex> t_set;                         // T_i (Edge variant)
    Vertex u = kNoVertex, v = kNoVertex;               // u_i, v_i
    Vertex x = kNoVertex, y = kNoVertex;               // x_i = f(u_i), y_i = f(v_i)
    Vertex z = kNoVertex;                              // z_i, chosen at inversion
};

struct ReedTransformRecord {
    std::vector<ReedTransformEntry> entries; // one per removed clique, clique order
    std::vector<Edge> new_edges;             // E_new
    std::vector<bool> in_a_rt;               // global activation sample

    bool empty() const { return entries.empty(); }
};

} // namespace streamchroma
