#include "streamchroma/generators.hpp"

#include "streamchroma/errors.hpp"
#include "streamchroma/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace streamchroma {

std::string to_string(BlockType t) {
    switch (t) {
        case BlockType::CliqueMinusAntiMatching: return "clique_minus_2am";
        case BlockType::CliqueWith3IS: return "clique_with_3is";
        case BlockType::CriticalSolitary: return "critical_solitary";
        case BlockType::PopularConfig: return "popular";
        case BlockType::FriendlyCore: return "friendly_core";
        case BlockType::FriendlyCoreInternal: return "friendly_core_internal";
        case BlockType::ExpandingCritical: return "expanding_critical";
        case BlockType::SmallClique: return "small_clique";
    }
    return "?";
}

namespace {

struct Builder {
    uint32_t delta;
    std::vector<Edge> edges;
    std::vector<uint32_t> degree;
    std::set<Edge> present;

    Vertex alloc(Vertex count) {
        Vertex base = static_cast<Vertex>(degree.size());
        degree.resize(degree.size() + count, 0);
        return base;
    }

    bool has_edge(Vertex a, Vertex b) const { return present.count(canonical(a, b)) > 0; }

    void connect(Vertex a, Vertex b) {
        if (degree[a] >= delta || degree[b] >= delta)
            throw InfeasibleSpec("degree budget exhausted while planting block");
        Edge e = canonical(a, b);
        if (!present.insert(e).second) return;
        edges.push_back(e);
        ++degree[a];
        ++degree[b];
    }

    void clique(Vertex base, Vertex count) {
        for (Vertex i = 0; i < count; ++i)
            for (Vertex j = i + 1; j < count; ++j) connect(base + i, base + j);
    }

    void clique_except(Vertex base, Vertex count, const std::set<Edge>& skip) {
        for (Vertex i = 0; i < count; ++i)
            for (Vertex j = i + 1; j < count; ++j) {
                Edge e = canonical(base + i, base + j);
                if (skip.count(e)) continue;
                connect(e.u, e.v);
            }
    }
};

std::vector<Vertex> range(Vertex base, Vertex count) {
    std::vector<Vertex> out(count);
    for (Vertex i = 0; i < count; ++i) out[i] = base + i;
    return out;
}

BlockPositions plant_block(Builder& b, const PlantBlock& blk, uint32_t delta, Rng& rng) {
    BlockPositions pos;
    pos.type = blk.type;
    (void)rng;
    switch (blk.type) {
        case BlockType::CliqueMinusAntiMatching: {
            if (delta < 6) throw InfeasibleSpec("clique_minus_2am needs delta >= 6");
            Vertex base = b.alloc(delta + 1);
            std::set<Edge> skip{canonical(base, base + 1), canonical(base + 2, base + 3)};
            b.clique_except(base, delta + 1, skip);
            pos.members = range(base, delta + 1);
            pos.anti_pairs = {{base, base + 1}, {base + 2, base + 3}};
            // lexicographically smallest max clique drops the larger endpoint
            for (Vertex v : pos.members)
                if (v != base + 1 && v != base + 3) pos.core.push_back(v);
            break;
        }
        case BlockType::CliqueWith3IS: {
            if (delta < 6) throw InfeasibleSpec("clique_with_3is needs delta >= 6");
            Vertex base = b.alloc(delta + 1);
            std::set<Edge> skip{canonical(base, base + 1), canonical(base, base + 2),
                                canonical(base + 1, base + 2)};
            b.clique_except(base, delta + 1, skip);
            pos.members = range(base, delta + 1);
            pos.independent_set = {base, base + 1, base + 2};
            for (Vertex v : pos.members)
                if (v != base + 1 && v != base + 2) pos.core.push_back(v);
            break;
        }
        case BlockType::CriticalSolitary: {
            if (delta < 7) throw InfeasibleSpec("critical_solitary needs delta >= 7");
            Vertex base = b.alloc(delta);
            std::set<Edge> skip{canonical(base, base + 1), canonical(base + 2, base + 3)};
            b.clique_except(base, delta, skip);
            pos.members = range(base, delta);
            pos.anti_pairs = {{base, base + 1}, {base + 2, base + 3}};
            for (Vertex v : pos.members)
                if (v != base + 1 && v != base + 3) pos.core.push_back(v);
            break;
        }
        case BlockType::PopularConfig: {
            uint32_t t = std::max<uint32_t>(2, delta / 4);
            if (delta < 12 || 2 * t + 2 > delta - 1)
                throw InfeasibleSpec("popular block needs delta >= 12");
            Vertex base = b.alloc(delta + 1); // delta-1 core + two friends
            b.clique(base, delta - 1);
            Vertex x1 = base + delta - 1, x2 = base + delta;
            for (uint32_t i = 0; i < t; ++i) b.connect(x1, base + i);
            b.connect(x2, base); // shared neighbor w = base
            for (uint32_t i = t; i + 1 < 2 * t; ++i) b.connect(x2, base + i);
            pos.members = range(base, delta - 1);
            pos.core = pos.members;
            pos.friends = {x1, x2};
            pos.shared_neighbor = base;
            // designated anti-neighbors inside the core
            pos.anti_pairs = {{x1, base + 2 * t}, {x2, base + 2 * t + 1}};
            break;
        }
        case BlockType::FriendlyCore:
        case BlockType::FriendlyCoreInternal: {
            bool internal = blk.type == BlockType::FriendlyCoreInternal;
            uint32_t df = blk.friend_degree ? blk.friend_degree : delta / 2;
            if (internal) df = delta - 2; // all of K except one anti-neighbor
            if (delta < 10 || df < 2 || df > delta - (internal ? 2 : 1))
                throw InfeasibleSpec("friendly block parameters out of range");
            Vertex base = b.alloc(delta - 1);
            b.clique(base, delta - 1);
            Vertex s = b.alloc(1);
            // internal: s misses exactly K[0]; external: s sees a prefix of K
            Vertex d_begin = internal ? 1 : 0;
            for (uint32_t i = 0; i < df; ++i) b.connect(s, base + d_begin + i);
            uint32_t targets = df - (blk.degree_deficient ? 1 : 0);
            Vertex tbase = b.alloc(targets);
            for (uint32_t i = 0; i < targets; ++i) b.connect(base + d_begin + i, tbase + i);
            if (blk.adjacent_targets && targets >= 2) b.connect(tbase, tbase + 1);
            pos.members = range(base, delta - 1);
            pos.core = pos.members;
            if (internal) {
                pos.members.push_back(s);
                pos.anti_pairs = {{s, base}};
            }
            pos.friend_vertex = s;
            pos.externals = range(tbase, targets);
            break;
        }
        case BlockType::ExpandingCritical: {
            if (delta < 8) throw InfeasibleSpec("expanding block needs delta >= 8");
            Vertex base = b.alloc(delta - 1);
            b.clique(base, delta - 1);
            uint32_t per = std::min<uint32_t>(blk.externals_per_vertex, 2);
            Vertex ext = b.alloc(per * (delta - 1));
            for (Vertex i = 0; i < delta - 1; ++i)
                for (uint32_t j = 0; j < per; ++j) b.connect(base + i, ext + per * i + j);
            pos.members = range(base, delta - 1);
            pos.core = pos.members;
            pos.externals = range(ext, per * (delta - 1));
            break;
        }
        case BlockType::SmallClique: {
            uint32_t size = blk.size ? blk.size : delta - 4;
            if (size < 4 || size > delta) throw InfeasibleSpec("small clique size out of range");
            Vertex base = b.alloc(size);
            std::set<Edge> skip;
            for (uint32_t i = 0; 2 * i + 1 < size && i < blk.anti_matching; ++i) {
                skip.insert(canonical(base + 2 * i, base + 2 * i + 1));
                pos.anti_pairs.push_back({base + 2 * i, base + 2 * i + 1});
            }
            b.clique_except(base, size, skip);
            pos.members = range(base, size);
            break;
        }
    }
    return pos;
}

} // namespace

PlantedInstance gen_planted_instance(const PlantSpec& spec, uint64_t seed) {
    Builder b;
    b.delta = spec.delta;
    PlantedInstance inst;
    inst.delta = spec.delta;

    uint32_t block_index = 0;
    for (const PlantBlock& blk : spec.blocks) {
        Rng rng(derive_seed(seed, rng_tag::kGenerator, block_index++));
        inst.blocks.push_back(plant_block(b, blk, spec.delta, rng));
    }

    inst.background_start = static_cast<Vertex>(b.degree.size());
    Vertex bg = b.alloc(spec.background_n);

    // sparse background
    if (spec.background_p > 0 && spec.background_n > 1) {
        Rng rng(derive_seed(seed, rng_tag::kGenerator, 1'000'000));
        for (Vertex i = 0; i < spec.background_n; ++i)
            for (Vertex j = i + 1; j < spec.background_n; ++j)
                if (rng.bernoulli(spec.background_p) && b.degree[bg + i] < spec.delta &&
                    b.degree[bg + j] < spec.delta)
                    b.connect(bg + i, bg + j);
    }

    // bounded bipartite attachment: block ports to background, one edge per
    // (port, block) at most, retry cap per spec
    if (spec.attach_per_port > 0) {
        Rng rng(derive_seed(seed, rng_tag::kGenerator, 2'000'000));
        for (const auto& pos : inst.blocks) {
            std::vector<Vertex> ports = pos.externals;
            if (pos.friend_vertex != kNoVertex) ports.push_back(pos.friend_vertex);
            for (Vertex port : ports) {
                for (uint32_t a = 0; a < spec.attach_per_port; ++a) {
                    if (b.degree[port] >= spec.delta) break;
                    if (spec.background_n == 0)
                        throw InfeasibleSpec("attachments requested but no background vertices");
                    bool placed = false;
                    for (uint32_t attempt = 0; attempt < 1000; ++attempt) {
                        Vertex t = bg + static_cast<Vertex>(rng.below(spec.background_n));
                        if (t == port || b.degree[t] >= spec.delta || b.has_edge(port, t)) continue;
                        b.connect(port, t);
                        placed = true;
                        break;
                    }
                    if (!placed)
                        throw InfeasibleSpec("attachment retry cap hit; background too saturated");
                }
            }
        }
    }

    inst.graph = Graph::from_edges(static_cast<Vertex>(b.degree.size()), spec.delta, b.edges);
    return inst;
}

Graph gen_random_graph(Vertex n, uint32_t max_deg, double edge_prob, uint64_t seed) {
    Graph g(n, max_deg);
    if (n >= 2 && edge_prob > 0) {
        std::vector<uint32_t> degree(n, 0);
        Rng rng(derive_seed(seed, rng_tag::kGenerator, 0));
        auto try_edge = [&](Vertex u, Vertex v) {
            if (degree[u] < max_deg && degree[v] < max_deg) {
                g.add_edge_unchecked(u, v);
                ++degree[u];
                ++degree[v];
            }
        };
        if (edge_prob >= 1.0) {
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) try_edge(u, v);
        } else if (edge_prob > 0.1) {
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    if (rng.bernoulli(edge_prob)) try_edge(u, v);
        } else {
            // skip-sample over the linearized pair index; same process, O(m) time
            uint64_t total = static_cast<uint64_t>(n) * (n - 1) / 2;
            double log1m = std::log1p(-edge_prob);
            uint64_t pos = 0;
            for (;;) {
                double u01 = rng.unit_open();
                uint64_t skip = static_cast<uint64_t>(std::floor(std::log(u01) / log1m));
                if (skip >= total - pos) break;
                pos += skip;
                // invert t -> (u, v) in the row-major upper triangle
                uint64_t t = pos;
                uint64_t lo = 0, hi = n - 1;
                while (lo < hi) {
                    uint64_t mid = (lo + hi + 1) / 2;
                    uint64_t before = mid * n - mid * (mid + 1) / 2;
                    if (before <= t) lo = mid;
                    else hi = mid - 1;
                }
                uint64_t u = lo;
                uint64_t before = u * n - u * (u + 1) / 2;
                uint64_t v = u + 1 + (t - before);
                try_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
                ++pos;
                if (pos >= total) break;
            }
        }
    }
    g.finalize();
    return g;
}

} // namespace streamchroma
