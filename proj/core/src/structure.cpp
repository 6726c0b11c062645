#include "streamchroma/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace streamchroma {

std::string to_string(SizeClass s) {
    switch (s) {
        case SizeClass::Small: return "small";
        case SizeClass::Critical: return "critical";
        case SizeClass::Large: return "large";
    }
    return "?";
}

SizeClass classify_size(size_t clique_size, uint32_t delta, uint64_t rho) {
    uint64_t size = clique_size;
    if (size >= static_cast<uint64_t>(delta) + 1) return SizeClass::Large;
    if (size + rho <= static_cast<uint64_t>(delta) + 1) return SizeClass::Small;
    return SizeClass::Critical;
}

bool AlmostClique::in_core(Vertex v) const {
    return std::binary_search(core.begin(), core.end(), v);
}

bool AlmostClique::contains(Vertex v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

SolitaryDetection detect_solitary(const std::vector<Vertex>& members,
                                  const std::vector<Edge>& anti_edges, bool all_recovered) {
    (void)members;
    SolitaryDetection det;
    // 2-anti-matching: two vertex-disjoint anti-edges
    size_t cap = std::min<size_t>(anti_edges.size(), 2000);
    for (size_t i = 0; i < cap; ++i) {
        for (size_t j = i + 1; j < cap; ++j) {
            const Edge& a = anti_edges[i];
            const Edge& b = anti_edges[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            det.solitary = true;
            det.certain = true;
            det.anti_pairs = {{a.u, a.v}, {b.u, b.v}};
            return det;
        }
    }
    // 3-independent set: triangle in the anti-edge graph
    std::map<Vertex, std::set<Vertex>> anti_adj;
    for (const Edge& e : anti_edges) {
        anti_adj[e.u].insert(e.v);
        anti_adj[e.v].insert(e.u);
    }
    for (const Edge& e : anti_edges) {
        for (Vertex w : anti_adj[e.u]) {
            if (w == e.v) continue;
            if (anti_adj[e.v].count(w)) {
                det.solitary = true;
                det.certain = true;
                det.independent_set = {e.u, e.v, w};
                std::sort(det.independent_set.begin(), det.independent_set.end());
                return det;
            }
        }
    }
    det.solitary = false;
    det.certain = all_recovered; // no witness is conclusive only with full info
    return det;
}

std::optional<std::vector<Vertex>> compute_core(const std::vector<Vertex>& members,
                                                const std::vector<Edge>& anti_edges,
                                                bool all_recovered) {
    if (anti_edges.empty()) {
        if (!all_recovered) return std::nullopt;
        return members;
    }

    // fast path: all anti-edges share one vertex s => K = C - s
    Vertex hub = kNoVertex;
    bool hub_ok = anti_edges.size() >= 2;
    if (hub_ok) {
        const Edge& first = anti_edges.front();
        for (Vertex cand : {first.u, first.v}) {
            bool all = true;
            for (const Edge& e : anti_edges)
                if (e.u != cand && e.v != cand) { all = false; break; }
            if (all) { hub = cand; break; }
        }
        hub_ok = hub != kNoVertex;
    }
    if (hub_ok) {
        std::vector<Vertex> core;
        for (Vertex v : members)
            if (v != hub) core.push_back(v);
        return core;
    }
    if (anti_edges.size() == 1) {
        // drop the larger endpoint: lexicographically smallest core
        Vertex drop = std::max(anti_edges.front().u, anti_edges.front().v);
        std::vector<Vertex> core;
        for (Vertex v : members)
            if (v != drop) core.push_back(v);
        return core;
    }

    // general path: minimum vertex cover of the anti-graph, exact. Only valid
    // with full knowledge of G[C].
    if (!all_recovered) return std::nullopt;
    std::vector<Vertex> verts;
    for (const Edge& e : anti_edges) {
        verts.push_back(e.u);
        verts.push_back(e.v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    size_t nv = verts.size();
    if (nv > 24) return std::nullopt; // anti-graph too large for the exact path

    auto vid = [&](Vertex v) {
        return std::lower_bound(verts.begin(), verts.end(), v) - verts.begin();
    };
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (const Edge& e : anti_edges)
        edges.push_back({static_cast<uint32_t>(vid(e.u)), static_cast<uint32_t>(vid(e.v))});

    uint32_t best_size = static_cast<uint32_t>(nv) + 1;
    uint64_t best_mask = 0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << nv); ++mask) {
        uint32_t sz = static_cast<uint32_t>(__builtin_popcountll(mask));
        if (sz > best_size) continue;
        bool cover = true;
        for (auto [a, b] : edges)
            if (!((mask >> a) & 1) && !((mask >> b) & 1)) { cover = false; break; }
        if (!cover) continue;
        if (sz < best_size) {
            best_size = sz;
            best_mask = mask;
        } else if (sz == best_size) {
            // keep the cover whose complement (the core) is lexicographically
            // smallest: prefer covering larger-id vertices
            std::vector<Vertex> cur, best;
            for (size_t i = 0; i < nv; ++i) {
                if ((mask >> i) & 1) cur.push_back(verts[i]);
                if ((best_mask >> i) & 1) best.push_back(verts[i]);
            }
            if (cur > best) best_mask = mask;
        }
    }
    std::set<Vertex> cover;
    for (size_t i = 0; i < nv; ++i)
        if ((best_mask >> i) & 1) cover.insert(verts[i]);
    std::vector<Vertex> core;
    for (Vertex v : members)
        if (!cover.count(v)) core.push_back(v);
    return core;
}

namespace {

// |N(x) cap K| for outside candidates, from the recovered side: x is seen by
// every recovered core member whose neighborhood contains it.
std::map<Vertex, uint32_t> core_neighbor_counts(const std::vector<Vertex>& core,
                                                const std::vector<Vertex>& members,
                                                const RecoveryResult& rec) {
    std::set<Vertex> member_set(members.begin(), members.end());
    std::map<Vertex, uint32_t> counts;
    for (Vertex u : core) {
        auto it = rec.recovered.find(u);
        if (it == rec.recovered.end()) continue;
        for (Vertex x : it->second.external)
            if (!member_set.count(x)) ++counts[x];
    }
    // the C-K vertex also has core neighbors but is not external
    return counts;
}

KClassification classify_friends_at(double k, uint32_t delta, const std::vector<Vertex>& core,
                                    const std::map<Vertex, uint32_t>& core_counts,
                                    const std::map<Vertex, std::vector<Vertex>>& anti_in_core) {
    KClassification out;
    out.k = k;
    double threshold = static_cast<double>(delta) / k;
    for (const auto& [x, cnt] : core_counts) {
        if (static_cast<double>(cnt) < threshold) continue;
        if (cnt >= core.size()) continue; // needs at least one non-neighbor in K
        out.friends.push_back({x, cnt});
    }
    // popular: two friends sharing a core neighbor with distinct anti-neighbors
    for (size_t i = 0; i < out.friends.size() && !out.popular; ++i) {
        for (size_t j = i + 1; j < out.friends.size() && !out.popular; ++j) {
            Vertex x1 = out.friends[i].v, x2 = out.friends[j].v;
            auto a1 = anti_in_core.find(x1);
            auto a2 = anti_in_core.find(x2);
            if (a1 == anti_in_core.end() || a2 == anti_in_core.end()) continue;
            // shared neighbor in K: core minus both anti-sets must overlap...
            // scan the core for a common neighbor
            Vertex shared = kNoVertex;
            for (Vertex w : core) {
                bool n1 = std::find(a1->second.begin(), a1->second.end(), w) == a1->second.end();
                bool n2 = std::find(a2->second.begin(), a2->second.end(), w) == a2->second.end();
                if (n1 && n2) { shared = w; break; }
            }
            if (shared == kNoVertex) continue;
            for (Vertex z1 : a1->second) {
                for (Vertex z2 : a2->second) {
                    if (z1 == z2) continue;
                    out.popular = true;
                    out.witness = PopularWitness{x1, x2, shared, z1, z2};
                    break;
                }
                if (out.popular) break;
            }
        }
    }
    out.friendly = !out.friends.empty() && !out.popular;
    return out;
}

} // namespace

std::vector<AlmostClique> analyze_structure(const AlmostCliqueDecomposition& acd,
                                            const RecoveryResult& rec,
                                            const EffectiveParams& ep) {
    std::vector<AlmostClique> out;
    out.reserve(acd.cliques.size());

    for (uint32_t ci = 0; ci < acd.cliques.size(); ++ci) {
        AlmostClique ac;
        ac.index = ci;
        ac.members = acd.cliques[ci];
        ac.size_class = classify_size(ac.members.size(), ep.delta, ep.rho);

        uint32_t unrecovered = 0;
        for (Vertex v : ac.members)
            if (!rec.recovered.count(v)) ++unrecovered;
        ac.all_recovered = unrecovered == 0;
        bool census_complete = unrecovered <= 1;

        auto anti_it = rec.anti_edges.find(ci);
        static const std::vector<Edge> kNoAnti;
        const std::vector<Edge>& anti = anti_it == rec.anti_edges.end() ? kNoAnti : anti_it->second;
        ac.certified_anti_edges = anti.size();
        ac.holey = anti.size() >= ep.holey_threshold;

        SolitaryDetection det = detect_solitary(ac.members, anti, census_complete);
        ac.solitary = det.solitary;
        ac.solitary_certain = det.certain;
        ac.witness_anti_pairs = det.anti_pairs;
        ac.witness_independent_set = det.independent_set;
        auto helper_it = rec.helpers.find(ci);
        if (helper_it != rec.helpers.end()) ac.helper = helper_it->second;
        if (!det.solitary && ac.helper) ac.solitary = true; // helper presence is a witness

        if (ac.holey && !census_complete) {
            // colorable by palette sparsification regardless; core not needed
            ac.core_undetermined = true;
        } else {
            auto core = compute_core(ac.members, anti, census_complete);
            if (core) ac.core = *core;
            else ac.core_undetermined = true;
        }

        if (!ac.solitary && !ac.core.empty()) {
            auto counts = core_neighbor_counts(ac.core, ac.members, rec);
            std::map<Vertex, std::vector<Vertex>> anti_in_core;
            std::set<Vertex> core_set(ac.core.begin(), ac.core.end());
            // a friend's anti-neighbors in K are the core members NOT seeing it
            for (const auto& [x, cnt] : counts) {
                std::vector<Vertex> a;
                for (Vertex u : ac.core) {
                    auto it = rec.recovered.find(u);
                    if (it == rec.recovered.end()) continue;
                    const auto& ext = it->second.external;
                    if (!std::binary_search(ext.begin(), ext.end(), x)) a.push_back(u);
                }
                if (!a.empty()) anti_in_core[x] = std::move(a);
            }
            // the C-K member is a friend candidate too: core neighbors = |K| - a(v)
            for (Vertex s : ac.members) {
                if (core_set.count(s)) continue;
                uint32_t in_core = 0;
                std::vector<Vertex> a;
                for (Vertex u : ac.core) {
                    auto it = rec.recovered.find(u);
                    if (it == rec.recovered.end()) continue;
                    const auto& av = it->second.anti;
                    if (std::binary_search(av.begin(), av.end(), s)) a.push_back(u);
                    else ++in_core;
                }
                counts[s] = in_core;
                if (!a.empty()) anti_in_core[s] = std::move(a);
            }
            ac.two_rho = classify_friends_at(ep.k_two_rho(), ep.delta, ac.core, counts, anti_in_core);
            ac.rho_class = classify_friends_at(ep.k_rho(), ep.delta, ac.core, counts, anti_in_core);
            ac.alpha_class =
                classify_friends_at(ep.k_popular(), ep.delta, ac.core, counts, anti_in_core);

            // X_C / Y_C split of the external neighborhood at threshold 2*rho
            std::set<Vertex> member_set(ac.members.begin(), ac.members.end());
            std::map<Vertex, uint32_t> all_ext; // seen from any recovered member
            for (Vertex v : ac.members) {
                auto it = rec.recovered.find(v);
                if (it == rec.recovered.end()) continue;
                for (Vertex x : it->second.external)
                    if (!member_set.count(x)) all_ext.emplace(x, 0);
            }
            for (auto& [x, kcnt] : all_ext) {
                auto cit = counts.find(x);
                kcnt = cit == counts.end() ? 0 : cit->second;
                if (static_cast<double>(kcnt) >= 2.0 * static_cast<double>(ep.rho))
                    ac.x_external.push_back(x);
                else
                    ac.y_external.push_back(x);
            }
        }
        out.push_back(std::move(ac));
    }
    return out;
}

} // namespace streamchroma
