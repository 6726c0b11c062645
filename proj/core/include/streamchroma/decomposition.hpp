#pragma once

#include "streamchroma/config.hpp"
#include "streamchroma/graph.hpp"

#include <cstdint>
#include <vector>

namespace streamchroma {

constexpr int32_t kSparse = -1;

/// Vertex partition V_sparse, C_1..C_k.
struct AlmostCliqueDecomposition {
    std::vector<std::vector<Vertex>> cliques; // sorted members, sorted by first member
    std::vector<int32_t> clique_of;           // kSparse for sparse vertices

    bool sparse(Vertex v) const { return clique_of[v] == kSparse; }
    size_t k() const { return cliques.size(); }
};

/// What the stream keeps for the decomposition estimator: a pre-pass anchor
/// sample and every stream edge incident to it.
struct AnchorData {
    double prob = 0;
    std::vector<bool> is_anchor;
    std::vector<Edge> edges; // canonical, incident to at least one anchor

    size_t bytes() const { return edges.size() * sizeof(Edge); }
};

/// Anchor-sampled estimator. Similarity counts |N(u) cap N(v)| are estimated
/// by |N(u) cap N(v) cap T| / prob; components of the mutual-similarity graph
/// over dense candidates are pruned and promoted against the almost-clique
/// constraints.
AlmostCliqueDecomposition build_decomposition_from_anchors(const AnchorData& anchors,
                                                           const EffectiveParams& ep);

/// Same construction with exact counts from a full graph. Used by tests to
/// isolate downstream components from estimator noise.
AlmostCliqueDecomposition build_decomposition_exact(const Graph& g, const EffectiveParams& ep);

} // namespace streamchroma
