#pragma once

#include "streamchroma/graph.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace streamchroma {

/// Planted building blocks mirroring the structures the coloring pipeline
/// distinguishes.
enum class BlockType {
    CliqueMinusAntiMatching, // (delta+1)-clique minus a 2-anti-matching; large solitary
    CliqueWith3IS,           // (delta+1)-clique minus an anti-triangle; large solitary
    CriticalSolitary,        // delta-clique minus a 2-anti-matching; critical solitary
    PopularConfig,           // (delta-1)-clique with two friends sharing a neighbor
    FriendlyCore,            // (delta-1)-clique with one external 2rho-friend, full-degree D
    FriendlyCoreInternal,    // same but the friend sits inside the almost-clique
    ExpandingCritical,       // (delta-1)-clique with distinct low-degree externals
    SmallClique,             // clique below the critical size threshold
};

std::string to_string(BlockType t);

struct PlantBlock {
    BlockType type;
    uint32_t friend_degree = 0;        // FriendlyCore*: |D|; 0 = delta/2
    uint32_t size = 0;                 // SmallClique: explicit size; 0 = delta-4
    uint32_t externals_per_vertex = 2; // ExpandingCritical: 0, 1 or 2
    uint32_t anti_matching = 0;        // SmallClique: disjoint anti-edges to carve out
    bool degree_deficient = false;     // FriendlyCore*: drop one degree-completion target
    bool adjacent_targets = false;     // FriendlyCore*: join two f-targets by an edge
};

struct PlantSpec {
    uint32_t delta = 32;
    std::vector<PlantBlock> blocks;
    Vertex background_n = 0;
    double background_p = 0.0;
    uint32_t attach_per_port = 1; // random block-to-background wiring bound
};

/// Where a planted block landed, with its designated roles.
struct BlockPositions {
    BlockType type;
    std::vector<Vertex> members;                   // the almost-clique itself
    std::vector<Vertex> core;                      // expected core (lexicographic rule)
    std::vector<std::array<Vertex, 2>> anti_pairs; // designated anti-edges
    std::vector<Vertex> independent_set;           // designated 3-IS
    Vertex friend_vertex = kNoVertex;              // s
    std::vector<Vertex> friends;                   // popular: x1, x2
    Vertex shared_neighbor = kNoVertex;            // popular: w
    std::vector<Vertex> externals;                 // f-targets / expanding externals
};

struct PlantedInstance {
    Graph graph;
    uint32_t delta = 0;
    std::vector<BlockPositions> blocks;
    Vertex background_start = 0; // vertices >= this are background
};

/// Deterministic per (spec, seed). Throws InfeasibleSpec when the degree
/// budget cannot host the requested attachments.
PlantedInstance gen_planted_instance(const PlantSpec& spec, uint64_t seed);

/// Erdos-Renyi-style graph truncated to max_deg by rejecting degree-violating
/// edges in generation order. Deterministic per seed.
Graph gen_random_graph(Vertex n, uint32_t max_deg, double edge_prob, uint64_t seed);

} // namespace streamchroma
