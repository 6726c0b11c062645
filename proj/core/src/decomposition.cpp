#include "streamchroma/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace streamchroma {

namespace {

struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(Vertex n) : parent(n) {
        for (Vertex v = 0; v < n; ++v) parent[v] = v;
    }
    Vertex find(Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Shared construction over witness adjacency lists: witnesses are the anchor
// vertices (estimator) or all vertices (exact mode).
AlmostCliqueDecomposition build_from_witnesses(Vertex n, const EffectiveParams& ep,
                                               const std::vector<std::vector<Vertex>>& witness_adj,
                                               const std::vector<std::vector<Vertex>>& known_adj,
                                               double prob) {
    double delta = ep.delta;
    double sim_threshold = (1.0 - ep.epsilon / 4.0) * delta;

    // pair co-occurrence counts over witness neighborhoods
    std::unordered_map<uint64_t, uint32_t> cnt;
    for (const auto& nbrs : witness_adj) {
        for (size_t i = 0; i < nbrs.size(); ++i)
            for (size_t j = i + 1; j < nbrs.size(); ++j) {
                uint64_t key = static_cast<uint64_t>(nbrs[i]) * n + nbrs[j];
                ++cnt[key];
            }
    }

    std::vector<std::vector<Vertex>> similar(n);
    for (const auto& [key, c] : cnt) {
        if (static_cast<double>(c) / prob >= sim_threshold) {
            Vertex u = static_cast<Vertex>(key / n), v = static_cast<Vertex>(key % n);
            similar[u].push_back(v);
            similar[v].push_back(u);
        }
    }

    std::vector<bool> dense(n, false);
    for (Vertex v = 0; v < n; ++v)
        dense[v] = static_cast<double>(similar[v].size()) >= sim_threshold;

    UnionFind uf(n);
    for (Vertex v = 0; v < n; ++v) {
        if (!dense[v]) continue;
        for (Vertex u : similar[v])
            if (dense[u]) uf.unite(u, v);
    }

    std::unordered_map<Vertex, std::vector<Vertex>> comps;
    for (Vertex v = 0; v < n; ++v)
        if (dense[v]) comps[uf.find(v)].push_back(v);

    std::vector<std::vector<Vertex>> cliques;
    for (auto& [root, members] : comps) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());
        cliques.push_back(std::move(members));
    }
    std::sort(cliques.begin(), cliques.end());

    std::vector<int32_t> clique_of(n, kSparse);
    auto rebuild_index = [&] {
        std::fill(clique_of.begin(), clique_of.end(), kSparse);
        for (size_t i = 0; i < cliques.size(); ++i)
            for (Vertex v : cliques[i]) clique_of[v] = static_cast<int32_t>(i);
    };
    rebuild_index();

    // estimated |N(v) cap C| from the witness-visible adjacency
    auto est_in = [&](Vertex v, int32_t ci) {
        double c = 0;
        for (Vertex u : known_adj[v])
            if (clique_of[u] == ci) ++c;
        return c / prob;
    };
    auto est_deg = [&](Vertex v) { return static_cast<double>(known_adj[v].size()) / prob; };

    // prune members violating the per-vertex almost-clique bounds
    for (size_t i = 0; i < cliques.size(); ++i) {
        std::vector<Vertex> keep;
        keep.reserve(cliques[i].size());
        for (Vertex v : cliques[i]) {
            double in = est_in(v, static_cast<int32_t>(i));
            double anti = static_cast<double>(cliques[i].size()) - 1.0 - in;
            double ext = est_deg(v) - in;
            if (anti <= ep.epsilon * delta && ext <= ep.epsilon * delta) keep.push_back(v);
        }
        cliques[i] = std::move(keep);
    }
    rebuild_index();

    // promote outside vertices nearly complete to some clique
    for (Vertex v = 0; v < n; ++v) {
        if (clique_of[v] != kSparse) continue;
        for (size_t i = 0; i < cliques.size(); ++i) {
            if (cliques[i].empty()) continue;
            if (static_cast<double>(cliques[i].size()) >= (1.0 + ep.epsilon / 2.0) * delta) continue;
            double in = est_in(v, static_cast<int32_t>(i));
            double missing = static_cast<double>(cliques[i].size()) - in;
            if (missing < ep.epsilon / 2.0 * delta) {
                cliques[i].insert(std::lower_bound(cliques[i].begin(), cliques[i].end(), v), v);
                clique_of[v] = static_cast<int32_t>(i);
                break;
            }
        }
    }

    // size filter
    std::vector<std::vector<Vertex>> final_cliques;
    for (auto& c : cliques) {
        double sz = static_cast<double>(c.size());
        if (sz >= (1.0 - ep.epsilon / 2.0) * delta && sz <= (1.0 + ep.epsilon / 2.0) * delta)
            final_cliques.push_back(std::move(c));
    }
    std::sort(final_cliques.begin(), final_cliques.end());

    AlmostCliqueDecomposition acd;
    acd.cliques = std::move(final_cliques);
    acd.clique_of.assign(n, kSparse);
    for (size_t i = 0; i < acd.cliques.size(); ++i)
        for (Vertex v : acd.cliques[i]) acd.clique_of[v] = static_cast<int32_t>(i);
    return acd;
}

} // namespace

AlmostCliqueDecomposition build_decomposition_from_anchors(const AnchorData& anchors,
                                                           const EffectiveParams& ep) {
    Vertex n = ep.n;
    // adjacency visible through anchors: witness lists (anchor side) and the
    // anchor-neighbor lists of every vertex (for membership estimates)
    std::vector<std::vector<Vertex>> witness_adj;
    std::vector<std::vector<Vertex>> anchor_nbrs(n);
    std::vector<int32_t> anchor_index(n, -1);
    for (Vertex v = 0; v < n; ++v)
        if (anchors.is_anchor[v]) {
            anchor_index[v] = static_cast<int32_t>(witness_adj.size());
            witness_adj.emplace_back();
        }
    for (const Edge& e : anchors.edges) {
        if (anchors.is_anchor[e.u]) {
            witness_adj[anchor_index[e.u]].push_back(e.v);
            anchor_nbrs[e.v].push_back(e.u);
        }
        if (anchors.is_anchor[e.v]) {
            witness_adj[anchor_index[e.v]].push_back(e.u);
            anchor_nbrs[e.u].push_back(e.v);
        }
    }
    for (auto& a : witness_adj) std::sort(a.begin(), a.end());
    for (auto& a : anchor_nbrs) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return build_from_witnesses(n, ep, witness_adj, anchor_nbrs, anchors.prob);
}

AlmostCliqueDecomposition build_decomposition_exact(const Graph& g, const EffectiveParams& ep) {
    std::vector<std::vector<Vertex>> adj(g.n());
    for (Vertex v = 0; v < g.n(); ++v) adj[v] = g.neighbors(v);
    return build_from_witnesses(g.n(), ep, adj, adj, 1.0);
}

} // namespace streamchroma
