#pragma once

#include <cstdint>
#include <vector>

namespace streamchroma {

constexpr uint32_t kUnmatched = UINT32_MAX;

/// Left-to-right adjacency of a bipartite graph.
struct BipartiteGraph {
    uint32_t left = 0, right = 0;
    std::vector<std::vector<uint32_t>> adj; // adj[l] = right neighbors

    BipartiteGraph() = default;
    BipartiteGraph(uint32_t l, uint32_t r) : left(l), right(r), adj(l) {}
};

struct MatchingResult {
    size_t size = 0;
    bool left_perfect = false;
    std::vector<uint32_t> match_left; // left -> right or kUnmatched
};

/// Maximum matching by queue-layered augmenting paths (Hopcroft-Karp).
MatchingResult maximum_bipartite_matching(const BipartiteGraph& g);

} // namespace streamchroma
