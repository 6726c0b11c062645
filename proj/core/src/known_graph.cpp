#include "streamchroma/known_graph.hpp"

#include <algorithm>

namespace streamchroma {

KnownGraph::KnownGraph(const StreamSummary& summary) {
    Vertex n = summary.params.n;
    adj_.resize(n);
    fully_known_.assign(n, false);

    auto add = [&](Vertex a, Vertex b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    };
    for (const Edge& e : summary.sparsified) add(e.u, e.v);
    for (const auto& [v, rec] : summary.recovery.recovered) {
        fully_known_[v] = true;
        for (Vertex u : summary.known_neighborhood(v)) add(v, u);
    }
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
}

bool KnownGraph::adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

} // namespace streamchroma
