#include "streamchroma/matching.hpp"

#include <algorithm>
#include <limits>

namespace streamchroma {

namespace {

constexpr uint32_t kInf = std::numeric_limits<uint32_t>::max();

struct HopcroftKarp {
    const BipartiteGraph& g;
    std::vector<uint32_t> match_l, match_r, dist, queue;

    explicit HopcroftKarp(const BipartiteGraph& graph)
        : g(graph),
          match_l(graph.left, kUnmatched),
          match_r(graph.right, kUnmatched),
          dist(graph.left, kInf) {
        queue.reserve(graph.left);
    }

    bool bfs() {
        queue.clear();
        for (uint32_t l = 0; l < g.left; ++l) {
            if (match_l[l] == kUnmatched) {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = kInf;
            }
        }
        bool found = false;
        for (size_t i = 0; i < queue.size(); ++i) {
            uint32_t l = queue[i];
            for (uint32_t r : g.adj[l]) {
                uint32_t l2 = match_r[r];
                if (l2 == kUnmatched) {
                    found = true;
                } else if (dist[l2] == kInf) {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        return found;
    }

    bool dfs(uint32_t l) {
        for (uint32_t r : g.adj[l]) {
            uint32_t l2 = match_r[r];
            if (l2 == kUnmatched || (dist[l2] == dist[l] + 1 && dfs(l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    }

    size_t run() {
        size_t matched = 0;
        while (bfs()) {
            for (uint32_t l = 0; l < g.left; ++l)
                if (match_l[l] == kUnmatched && dfs(l)) ++matched;
        }
        return matched;
    }
};

} // namespace

MatchingResult maximum_bipartite_matching(const BipartiteGraph& g) {
    HopcroftKarp hk(g);
    MatchingResult res;
    res.size = hk.run();
    res.match_left = std::move(hk.match_l);
    res.left_perfect = res.size == g.left;
    return res;
}

} // namespace streamchroma
