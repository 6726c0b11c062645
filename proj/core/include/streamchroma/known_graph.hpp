#pragma once

#include "streamchroma/graph.hpp"
#include "streamchroma/stream_engine.hpp"

#include <vector>

namespace streamchroma {

/// The edges the algorithm can consult after the pass: the sparsified graph
/// plus everything implied by recovered neighborhoods. List-colored conflict
/// checks against this adjacency are exact (a shared candidate color forces
/// the edge into the sparsified graph; off-list colors imply a recovered
/// endpoint), so serene coloring decisions made here are sound on the full
/// graph. Anchor edges stay out: they serve the decomposition estimator only.
class KnownGraph {
public:
    KnownGraph() = default;
    explicit KnownGraph(const StreamSummary& summary);

    Vertex n() const { return static_cast<Vertex>(adj_.size()); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    bool adjacent(Vertex u, Vertex v) const;

    /// True iff the full neighborhood of v is recovered.
    bool fully_known(Vertex v) const { return fully_known_[v]; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<bool> fully_known_;
};

} // namespace streamchroma
