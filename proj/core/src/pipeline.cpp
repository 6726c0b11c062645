#include "streamchroma/pipeline.hpp"

#include "streamchroma/rng.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace streamchroma {

std::string IncompleteReport::to_text() const {
    std::ostringstream os;
    os << "incomplete step=" << step;
    if (clique >= 0) os << " clique=" << clique;
    if (!witness.empty()) os << " witness=" << witness;
    return os.str();
}

std::optional<std::vector<uint32_t>> find_l_perfect_matching(const BipartiteGraph& g) {
    MatchingResult res = maximum_bipartite_matching(g);
    if (!res.left_perfect) return std::nullopt;
    return res.match_left;
}

Pipeline::Pipeline(const StreamSummary& summary)
    : s_(summary), known_(summary), q_(summary.params.delta > 0 ? summary.params.delta - 1 : 0),
      coloring_(summary.params.n, q_), removed_pre_(summary.params.n, false),
      removed_rt_(summary.params.n, false), extra_adj_(summary.params.n) {}

bool Pipeline::vertex_present(Vertex v) const {
    if (include_pre_removed_) return true;
    if (removed_pre_[v]) return false;
    if (include_rt_removed_) return true;
    return !removed_rt_[v];
}

void Pipeline::for_each_known_neighbor(Vertex v, const std::function<void(Vertex)>& fn) const {
    for (Vertex u : known_.neighbors(v))
        if (vertex_present(u)) fn(u);
    if (use_extra_)
        for (Vertex u : extra_adj_[v])
            if (vertex_present(u)) fn(u);
}

uint32_t Pipeline::list_size(Vertex v) const {
    std::set<uint32_t> used;
    for_each_known_neighbor(v, [&](Vertex u) {
        if (coloring_.colored(u)) used.insert(coloring_.color(u));
    });
    return q_ - static_cast<uint32_t>(used.size());
}

uint32_t Pipeline::uncolored_in(Vertex v, const std::vector<bool>& batch) const {
    uint32_t count = 0;
    for_each_known_neighbor(v, [&](Vertex u) {
        if (!coloring_.colored(u) && batch[u]) ++count;
    });
    return count;
}

bool Pipeline::color_available(Vertex v, uint32_t c) const {
    bool ok = true;
    for_each_known_neighbor(v, [&](Vertex u) {
        if (coloring_.color(u) == c) ok = false;
    });
    return ok;
}

std::optional<uint32_t> Pipeline::first_available_known(Vertex v) const {
    std::vector<bool> used(q_ + 1, false);
    for_each_known_neighbor(v, [&](Vertex u) {
        uint32_t c = coloring_.color(u);
        if (c != kUncolored && c <= q_) used[c] = true;
    });
    for (uint32_t c = 1; c <= q_; ++c)
        if (!used[c]) return c;
    return std::nullopt;
}

std::optional<uint32_t> Pipeline::first_available_from_list(Vertex v, int list_index) const {
    for (uint32_t c : s_.palettes.list(list_index, v))
        if (color_available(v, c)) return c;
    return std::nullopt;
}

void Pipeline::assign_known(Vertex v, uint32_t c, const char* step, int32_t clique) {
    if (!known_.fully_known(v))
        throw StepFailureError({step, clique, "off-list color on unrecovered vertex " +
                                                  std::to_string(v)});
    if (!color_available(v, c))
        throw StepFailureError({step, clique, "color " + std::to_string(c) +
                                                  " conflicts at vertex " + std::to_string(v)});
    coloring_.set_known(v, c);
}

void Pipeline::assign_list(Vertex v, uint32_t c, uint8_t list_index, const char* step,
                           int32_t clique) {
    const auto& lst = s_.palettes.list(list_index, v);
    if (!std::binary_search(lst.begin(), lst.end(), c))
        throw StepFailureError({step, clique, "color not in list at vertex " + std::to_string(v)});
    if (!color_available(v, c))
        throw StepFailureError({step, clique, "list color " + std::to_string(c) +
                                                  " conflicts at vertex " + std::to_string(v)});
    coloring_.set_from_list(v, c, list_index);
}

void Pipeline::note(uint32_t ci, const char* tag) { attribution_.push_back({ci, tag}); }

std::vector<uint32_t> Pipeline::h_clique_indices() const {
    std::vector<uint32_t> out;
    for (const auto& ac : s_.cliques) {
        if (ac.members.empty()) continue;
        if (removed_pre_[ac.members.front()] || removed_rt_[ac.members.front()]) continue;
        out.push_back(ac.index);
    }
    return out;
}

uint32_t Pipeline::current_degree(Vertex v) const {
    auto it = s_.recovery.recovered.find(v);
    if (it == s_.recovery.recovered.end()) throw Error("current_degree on unrecovered vertex");
    uint32_t deg = 0;
    for (Vertex u : s_.known_neighborhood(v))
        if (vertex_present(u)) ++deg;
    if (use_extra_) deg += static_cast<uint32_t>(extra_adj_[v].size());
    return deg;
}

// ---------------------------------------------------------------------------
// Step 1a: remove large, critical solitary and critical popular almost-cliques

void Pipeline::step1_preprocess() {
    for (const auto& ac : s_.cliques) {
        bool remove = false;
        if (ac.size_class == SizeClass::Large) {
            remove = true;
            preprocess_solitary_.push_back(ac.index);
        } else if (ac.size_class == SizeClass::Critical && ac.solitary) {
            remove = true;
            preprocess_solitary_.push_back(ac.index);
        } else if (ac.size_class == SizeClass::Critical && ac.alpha_class.popular) {
            remove = true;
            preprocess_popular_.push_back(ac.index);
        }
        if (remove)
            for (Vertex v : ac.members) removed_pre_[v] = true;
    }
}

// Step 1b lives in reed_transform.cpp.

// ---------------------------------------------------------------------------
// Step 2: slack generation on H

void Pipeline::step2_slack_generation() {
    Vertex n = s_.params.n;
    std::vector<bool> active(n, false);
    for (Vertex v = 0; v < n; ++v)
        active[v] = in_h(v) && keyed_bernoulli(s_.params.seed, rng_tag::kSlackActivation, 0, v,
                                               s_.params.p_sg);

    // a proposal survives iff no H-neighbor proposed the same color; proposals
    // are L2 colors, so the sparsified graph plus the transform's synthetic
    // edges see every conflict
    auto proposal = [&](Vertex v) -> uint32_t {
        return active[v] ? s_.palettes.l2[v] : kUncolored;
    };
    std::vector<bool> keep(n, false);
    auto conflict_scan = [&](Vertex a, Vertex b) {
        if (proposal(a) != kUncolored && proposal(a) == proposal(b)) {
            // mark both; resolved after the scan
            keep[a] = true;
            keep[b] = true;
        }
    };
    // keep[] is used as "has conflict" during the scan
    for (const Edge& e : s_.sparsified)
        if (in_h(e.u) && in_h(e.v)) conflict_scan(e.u, e.v);
    for (const Edge& e : record_.new_edges) conflict_scan(e.u, e.v);

    for (Vertex v = 0; v < n; ++v) {
        if (!active[v] || keep[v]) continue; // inactive or conflicted
        coloring_.set_from_list(v, s_.palettes.l2[v], 2);
    }
}

// ---------------------------------------------------------------------------
// Step 3: critical almost-cliques of H, two stages

std::optional<std::pair<Vertex, Vertex>> Pipeline::find_witness_pair(
    uint32_t ci, const std::vector<bool>& batch) const {
    const auto& core = s_.cliques[ci].core;
    // u gets condition (1), v condition (2); core vertices are pairwise
    // adjacent, so any (u, v) pair of distinct uncolored members qualifies
    // structurally
    for (Vertex v : core) {
        if (coloring_.colored(v)) continue;
        if (list_size(v) < uncolored_in(v, batch) + 1) continue;
        for (Vertex u : core) {
            if (u == v || coloring_.colored(u)) continue;
            if (list_size(u) < uncolored_in(u, batch)) continue;
            return std::make_pair(u, v);
        }
    }
    return std::nullopt;
}

void Pipeline::color_clique_greedy(uint32_t ci, Vertex u, Vertex v, const std::vector<bool>& batch,
                                   const char* step_name) {
    (void)batch;
    const auto& ac = s_.cliques[ci];
    // order: s first (if uncolored), then members outside N(u) cap N(v), then
    // the rest, then u, then v
    std::vector<Vertex> order;
    std::vector<Vertex> common, rest;
    for (Vertex w : ac.members) {
        if (w == u || w == v || coloring_.colored(w)) continue;
        if (ac.in_core(w)) {
            common.push_back(w); // core vertices are common neighbors of u and v
        } else {
            rest.push_back(w); // the C-K vertex, when uncolored, goes first
        }
    }
    for (Vertex w : rest) order.push_back(w);
    for (Vertex w : common) order.push_back(w);
    order.push_back(u);
    order.push_back(v);

    for (Vertex w : order) {
        if (coloring_.colored(w)) continue;
        if (!ac.in_core(w)) {
            // the unique C - K vertex is colored from L3
            auto c = first_available_from_list(w, 3);
            if (!c)
                throw StepFailureError({step_name, static_cast<int32_t>(ci),
                                        "L3 exhausted at vertex " + std::to_string(w)});
            assign_list(w, *c, 3, step_name, static_cast<int32_t>(ci));
            continue;
        }
        auto c = first_available_known(w);
        if (!c)
            throw StepFailureError({step_name, static_cast<int32_t>(ci),
                                    "no color left at core vertex " + std::to_string(w)});
        assign_known(w, *c, step_name, static_cast<int32_t>(ci));
    }
}

void Pipeline::extend_critical_batch(const std::vector<uint32_t>& batch, const char* step_name) {
    std::vector<bool> in_batch(s_.params.n, false);
    for (uint32_t ci : batch)
        for (Vertex v : s_.cliques[ci].members) in_batch[v] = true;

    for (uint32_t ci : batch) {
        const auto& ac = s_.cliques[ci];
        // color the C - K vertex first when present and uncolored
        for (Vertex w : ac.members) {
            if (ac.in_core(w) || coloring_.colored(w)) continue;
            auto c = first_available_from_list(w, 3);
            if (!c)
                throw StepFailureError({step_name, static_cast<int32_t>(ci),
                                        "L3 exhausted at vertex " + std::to_string(w)});
            assign_list(w, *c, 3, step_name, static_cast<int32_t>(ci));
        }
        auto pair = find_witness_pair(ci, in_batch);
        if (!pair)
            throw StepFailureError(
                {step_name, static_cast<int32_t>(ci), "no slack witness pair"});
        color_clique_greedy(ci, pair->first, pair->second, in_batch, step_name);
    }
}

void Pipeline::step3_color_critical() {
    std::vector<uint32_t> j1, j2;
    for (uint32_t ci : h_clique_indices()) {
        const auto& ac = s_.cliques[ci];
        if (ac.size_class != SizeClass::Critical) continue;
        // the unique C - K vertex, if any
        Vertex s = kNoVertex;
        for (Vertex w : ac.members)
            if (!ac.in_core(w)) s = w;
        bool stage1;
        if (s == kNoVertex || coloring_.colored(s)) {
            stage1 = true;
        } else {
            auto rec = s_.recovery.recovered.find(s);
            if (rec != s_.recovery.recovered.end()) {
                uint32_t ext = 0;
                for (Vertex x : rec->second.external)
                    if (vertex_present(x)) ++ext;
                ext += static_cast<uint32_t>(extra_adj_[s].size());
                stage1 = ext < 2 * s_.params.rho;
            } else {
                stage1 = false; // unrecovered: external degree is large
            }
        }
        (stage1 ? j1 : j2).push_back(ci);
    }

    extend_critical_batch(j1, "step3-critical-stage1");
    for (uint32_t ci : j1) note(ci, "step3-critical");

    // stage 2: same-color each s_j with an uncolored anti-neighbor first
    for (uint32_t ci : j2) {
        const auto& ac = s_.cliques[ci];
        Vertex s = kNoVertex;
        for (Vertex w : ac.members)
            if (!ac.in_core(w)) s = w;
        Vertex z = kNoVertex;
        for (Vertex u : ac.core) {
            auto it = s_.recovery.recovered.find(u);
            if (it == s_.recovery.recovered.end()) continue;
            const auto& anti = it->second.anti;
            if (std::binary_search(anti.begin(), anti.end(), s) && !coloring_.colored(u)) {
                z = u;
                break;
            }
        }
        if (z == kNoVertex)
            throw StepFailureError({"step3-critical-stage2", static_cast<int32_t>(ci),
                                    "no uncolored anti-neighbor of " + std::to_string(s)});
        uint32_t chosen = 0;
        for (uint32_t c : s_.palettes.list(3, s)) {
            if (color_available(s, c) && color_available(z, c)) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0)
            throw StepFailureError({"step3-critical-stage2", static_cast<int32_t>(ci),
                                    "L3 exhausted for pair " + std::to_string(s) + "," +
                                        std::to_string(z)});
        assign_list(s, chosen, 3, "step3-critical-stage2", static_cast<int32_t>(ci));
        assign_known(z, chosen, "step3-critical-stage2", static_cast<int32_t>(ci));
    }
    extend_critical_batch(j2, "step3-critical-stage2");
    for (uint32_t ci : j2) note(ci, "step3-critical");
}

// ---------------------------------------------------------------------------
// Step 4: sparse vertices, then small almost-cliques

void Pipeline::step4_color_sparse() {
    for (Vertex v = 0; v < s_.params.n; ++v) {
        if (s_.acd.clique_of[v] != kSparse || !in_h(v) || coloring_.colored(v)) continue;
        auto c = first_available_from_list(v, 4);
        if (!c)
            throw StepFailureError({"step4-sparse", -1, "L4 exhausted at vertex " +
                                                            std::to_string(v)});
        assign_list(v, *c, 4, "step4-sparse", -1);
    }
}

PaletteGraph Pipeline::build_palette_graph(uint32_t ci, int list_index) const {
    const auto& ac = s_.cliques[ci];
    PaletteGraph pg;
    std::vector<bool> used_in_c(q_ + 1, false);
    for (Vertex v : ac.members) {
        uint32_t c = coloring_.color(v);
        if (c != kUncolored && c <= q_) used_in_c[c] = true;
        if (c == kUncolored) pg.left.push_back(v);
    }
    for (uint32_t c = 1; c <= q_; ++c)
        if (!used_in_c[c]) pg.right_colors.push_back(c);

    uint32_t nl = static_cast<uint32_t>(pg.left.size());
    uint32_t nr = static_cast<uint32_t>(pg.right_colors.size());
    pg.availability = BipartiteGraph(nl, nr);
    pg.sampled = BipartiteGraph(nl, nr);
    for (uint32_t i = 0; i < nl; ++i) {
        Vertex v = pg.left[i];
        const auto& lst = s_.palettes.list(list_index, v);
        for (uint32_t j = 0; j < nr; ++j) {
            uint32_t c = pg.right_colors[j];
            if (!color_available(v, c)) continue;
            pg.availability.adj[i].push_back(j);
            if (std::binary_search(lst.begin(), lst.end(), c)) pg.sampled.adj[i].push_back(j);
        }
    }
    return pg;
}

void Pipeline::color_small_via_matching(uint32_t ci, int list_index, const char* step_name) {
    PaletteGraph pg = build_palette_graph(ci, list_index);
    if (pg.left.empty()) return;
    auto match = find_l_perfect_matching(pg.sampled);
    if (!match)
        throw StepFailureError(
            {step_name, static_cast<int32_t>(ci),
             "no L-perfect matching over " + std::to_string(pg.left.size()) + " vertices"});
    for (uint32_t i = 0; i < pg.left.size(); ++i)
        assign_list(pg.left[i], pg.right_colors[(*match)[i]], static_cast<uint8_t>(list_index),
                    step_name, static_cast<int32_t>(ci));
}

void Pipeline::step4_color_small() {
    std::vector<uint32_t> plain, holey;
    for (uint32_t ci : h_clique_indices()) {
        const auto& ac = s_.cliques[ci];
        if (ac.size_class != SizeClass::Small) continue;
        (ac.holey ? holey : plain).push_back(ci);
    }
    // low-anti-edge cliques keep their slack-generation colors
    for (uint32_t ci : plain) {
        color_small_via_matching(ci, 4, "step4-small");
        note(ci, "step4-small");
    }
    // holey cliques are recolored from scratch, hence processed last
    for (uint32_t ci : holey) {
        for (Vertex v : s_.cliques[ci].members) coloring_.uncolor(v);
        color_small_via_matching(ci, 4, "step4-holey");
        note(ci, "step4-holey");
    }
}

// ---------------------------------------------------------------------------
// Step 5 z-selection (the inversion itself lives in reed_transform.cpp)

void Pipeline::select_z_vertices() {
    z_groups_.clear();
    // S(w): entries whose s vertex is w
    std::map<Vertex, std::vector<size_t>> s_entries;
    for (size_t i = 0; i < record_.entries.size(); ++i)
        s_entries[record_.entries[i].s].push_back(i);

    std::set<Vertex> s_set;
    for (const auto& e : record_.entries) s_set.insert(e.s);
    std::set<Vertex> claimed; // z vertices already taken by earlier groups

    for (auto& [w, idxs] : s_entries) {
        // anti-neighbors of w inside each clique's core, from the core side
        auto anti_candidates = [&](size_t entry_idx) {
            const auto& entry = record_.entries[entry_idx];
            const auto& ac = s_.cliques[entry.clique];
            std::vector<Vertex> out;
            for (Vertex u : ac.core) {
                if (claimed.count(u) || s_set.count(u)) continue;
                auto it = s_.recovery.recovered.find(u);
                if (it == s_.recovery.recovered.end()) continue;
                bool adjacent_w;
                if (ac.contains(w)) {
                    adjacent_w = !std::binary_search(it->second.anti.begin(),
                                                     it->second.anti.end(), w);
                } else {
                    adjacent_w = std::binary_search(it->second.external.begin(),
                                                    it->second.external.end(), w);
                }
                if (!adjacent_w && u != w) out.push_back(u);
            }
            return out;
        };

        auto group_of = [&](const std::vector<Vertex>& zs) {
            std::vector<Vertex> group{w};
            group.insert(group.end(), zs.begin(), zs.end());
            std::set<Vertex> x_like(zs.begin(), zs.end());
            x_like.insert(w);
            for (const auto& e : record_.entries)
                if (e.x != kNoVertex && x_like.count(e.x)) group.push_back(e.v);
            std::sort(group.begin(), group.end());
            group.erase(std::unique(group.begin(), group.end()), group.end());
            return group;
        };
        auto independent = [&](const std::vector<Vertex>& group) {
            for (size_t i = 0; i < group.size(); ++i)
                for (size_t j = i + 1; j < group.size(); ++j) {
                    Vertex a = group[i], b = group[j];
                    auto ra = s_.recovery.recovered.find(a);
                    if (ra != s_.recovery.recovered.end()) {
                        auto nb = s_.known_neighborhood(a);
                        if (std::binary_search(nb.begin(), nb.end(), b)) return false;
                    } else if (known_.adjacent(a, b)) {
                        return false;
                    }
                }
            return true;
        };

        std::vector<Vertex> zs;
        bool done = false;
        if (idxs.size() == 1 && s_.cliques[record_.entries[idxs[0]].clique].contains(w)) {
            // Case 1: any anti-neighbor works; verify and take the first that does
            for (Vertex cand : anti_candidates(idxs[0])) {
                auto group = group_of({cand});
                if (independent(group)) {
                    zs = {cand};
                    done = true;
                    break;
                }
            }
        } else {
            // Case 2: randomized selection with the X_u filter, bounded retries
            for (uint32_t attempt = 0; attempt < s_.params.retry_budget && !done; ++attempt) {
                std::vector<Vertex> picked;
                bool ok = true;
                for (size_t idx : idxs) {
                    Vertex chosen = kNoVertex;
                    for (Vertex cand : anti_candidates(idx)) {
                        if (!keyed_bernoulli(s_.params.seed, rng_tag::kZSelection,
                                             attempt * 1000 + idx, cand, 0.1))
                            continue;
                        if (std::find(picked.begin(), picked.end(), cand) != picked.end())
                            continue;
                        chosen = cand;
                        break;
                    }
                    if (chosen == kNoVertex) {
                        ok = false;
                        break;
                    }
                    picked.push_back(chosen);
                }
                if (!ok) continue;
                auto group = group_of(picked);
                if (independent(group)) {
                    zs = picked;
                    done = true;
                }
            }
        }
        if (!done)
            throw StepFailureError({"step5-z-selection", -1,
                                    "no independent z set for s vertex " + std::to_string(w)});
        for (size_t k = 0; k < idxs.size(); ++k) {
            record_.entries[idxs[k]].z = zs[k];
            claimed.insert(zs[k]);
        }
        z_groups_.push_back({w, group_of(zs)});
    }
}

// ---------------------------------------------------------------------------
// Step 6: popular and solitary almost-cliques removed in preprocessing

void Pipeline::step6_color_popular(uint32_t ci) {
    const auto& ac = s_.cliques[ci];
    if (!ac.alpha_class.witness)
        throw StepFailureError({"step6-popular", static_cast<int32_t>(ci), "no popular witness"});
    for (Vertex v : ac.members)
        if (coloring_.colored(v)) coloring_.uncolor(v);

    PopularWitness wit = *ac.alpha_class.witness;
    // the friends may be colored vertices of G'; they get recolored here
    for (Vertex x : {wit.x1, wit.x2})
        if (coloring_.colored(x)) coloring_.uncolor(x);

    // color the C - K vertex first unless it is one of the friends
    for (Vertex v : ac.members) {
        if (ac.in_core(v) || v == wit.x1 || v == wit.x2 || coloring_.colored(v)) continue;
        auto c = first_available_from_list(v, 6);
        if (!c)
            throw StepFailureError({"step6-popular", static_cast<int32_t>(ci),
                                    "L6 exhausted at vertex " + std::to_string(v)});
        assign_list(v, *c, 6, "step6-popular", static_cast<int32_t>(ci));
    }

    // same-color the two friend / anti-neighbor pairs with distinct colors
    uint32_t c1 = 0;
    for (uint32_t c : s_.palettes.list(6, wit.x1))
        if (color_available(wit.x1, c) && color_available(wit.z1, c)) {
            c1 = c;
            break;
        }
    if (c1 == 0)
        throw StepFailureError({"step6-popular", static_cast<int32_t>(ci),
                                "no shared L6 color for first pair"});
    assign_list(wit.x1, c1, 6, "step6-popular", static_cast<int32_t>(ci));
    assign_known(wit.z1, c1, "step6-popular", static_cast<int32_t>(ci));

    uint32_t c2 = 0;
    for (uint32_t c : s_.palettes.list(6, wit.x2))
        if (c != c1 && color_available(wit.x2, c) && color_available(wit.z2, c)) {
            c2 = c;
            break;
        }
    if (c2 == 0)
        throw StepFailureError({"step6-popular", static_cast<int32_t>(ci),
                                "no shared L6 color for second pair"});
    assign_list(wit.x2, c2, 6, "step6-popular", static_cast<int32_t>(ci));
    assign_known(wit.z2, c2, "step6-popular", static_cast<int32_t>(ci));

    // greedy completion of K with the generic witness-pair machinery
    std::vector<bool> batch(s_.params.n, false);
    for (Vertex v : ac.members) batch[v] = true;
    auto pair = find_witness_pair(ci, batch);
    if (!pair)
        throw StepFailureError({"step6-popular", static_cast<int32_t>(ci),
                                "no slack witness pair after same-coloring"});
    color_clique_greedy(ci, pair->first, pair->second, batch, "step6-popular");
    note(ci, "step6-popular");
}

void Pipeline::step6_color_solitary(uint32_t ci) {
    const auto& ac = s_.cliques[ci];
    for (Vertex v : ac.members)
        if (coloring_.colored(v)) coloring_.uncolor(v);

    if (ac.holey) {
        // same-color certified anti-pairs until the unused colors can host the
        // remainder, then palette-match on L6
        auto anti_it = s_.recovery.anti_edges.find(ci);
        std::vector<Edge> anti = anti_it == s_.recovery.anti_edges.end() ? std::vector<Edge>{}
                                                                         : anti_it->second;
        auto uncolored_count = [&] {
            uint32_t c = 0;
            for (Vertex v : ac.members)
                if (!coloring_.colored(v)) ++c;
            return c;
        };
        auto unused_colors = [&] {
            std::set<uint32_t> used;
            for (Vertex v : ac.members)
                if (coloring_.colored(v)) used.insert(coloring_.color(v));
            return q_ - static_cast<uint32_t>(used.size());
        };
        std::set<Vertex> paired;
        for (const Edge& e : anti) {
            if (uncolored_count() <= unused_colors()) break;
            if (paired.count(e.u) || paired.count(e.v)) continue;
            bool u_known = s_.recovery.recovered.count(e.u) > 0;
            bool v_known = s_.recovery.recovered.count(e.v) > 0;
            if (!u_known && !v_known) continue;
            Vertex list_side = u_known ? e.v : e.u;
            Vertex known_side = u_known ? e.u : e.v;
            uint32_t c = 0;
            for (uint32_t cand : s_.palettes.list(6, list_side))
                if (color_available(list_side, cand) && color_available(known_side, cand)) {
                    c = cand;
                    break;
                }
            if (c == 0) continue;
            assign_list(list_side, c, 6, "step6-solitary", static_cast<int32_t>(ci));
            assign_known(known_side, c, "step6-solitary", static_cast<int32_t>(ci));
            paired.insert(e.u);
            paired.insert(e.v);
        }
        if (uncolored_count() > unused_colors())
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "holey clique larger than its unused palette"});
        color_small_via_matching(ci, 6, "step6-solitary");
        note(ci, "step6-solitary");
        return;
    }

    if (!ac.helper)
        throw StepFailureError(
            {"step6-solitary", static_cast<int32_t>(ci), "no solitary helper structure"});
    const SolitaryHelper& h = *ac.helper;

    std::vector<Vertex> helper_vertices;
    if (h.kind == SolitaryHelper::Kind::AntiMatching) {
        // same-color each anti-edge, two distinct colors
        uint32_t c1 = 0;
        for (uint32_t c : s_.palettes.list(6, h.partners[0]))
            if (color_available(h.partners[0], c) && color_available(h.known[0], c)) {
                c1 = c;
                break;
            }
        if (c1 == 0)
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "no shared L6 color for first anti-edge"});
        assign_list(h.partners[0], c1, 6, "step6-solitary", static_cast<int32_t>(ci));
        assign_known(h.known[0], c1, "step6-solitary", static_cast<int32_t>(ci));
        uint32_t c2 = 0;
        for (uint32_t c : s_.palettes.list(6, h.partners[1]))
            if (c != c1 && color_available(h.partners[1], c) && color_available(h.known[1], c)) {
                c2 = c;
                break;
            }
        if (c2 == 0)
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "no shared L6 color for second anti-edge"});
        assign_list(h.partners[1], c2, 6, "step6-solitary", static_cast<int32_t>(ci));
        assign_known(h.known[1], c2, "step6-solitary", static_cast<int32_t>(ci));
        helper_vertices = {h.known[0], h.partners[0], h.known[1], h.partners[1]};
    } else {
        // one color for the whole 3-independent set
        uint32_t c1 = 0;
        for (uint32_t c : s_.palettes.list(6, h.partners[0]))
            if (color_available(h.partners[0], c) && color_available(h.known[0], c) &&
                color_available(h.known[1], c)) {
                c1 = c;
                break;
            }
        if (c1 == 0)
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "no shared L6 color for the 3-independent set"});
        assign_list(h.partners[0], c1, 6, "step6-solitary", static_cast<int32_t>(ci));
        assign_known(h.known[0], c1, "step6-solitary", static_cast<int32_t>(ci));
        assign_known(h.known[1], c1, "step6-solitary", static_cast<int32_t>(ci));
        helper_vertices = {h.known[0], h.known[1], h.partners[0]};
    }

    // S: members with an anti-neighbor (or unrecovered), colored from L6
    auto anti_it = s_.recovery.anti_edges.find(ci);
    std::set<Vertex> has_anti;
    if (anti_it != s_.recovery.anti_edges.end())
        for (const Edge& e : anti_it->second) {
            has_anti.insert(e.u);
            has_anti.insert(e.v);
        }
    for (Vertex v : ac.members) {
        if (coloring_.colored(v)) continue;
        if (!has_anti.count(v) && s_.recovery.recovered.count(v)) continue;
        auto c = first_available_from_list(v, 6);
        if (!c)
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "L6 exhausted at vertex " + std::to_string(v)});
        assign_list(v, *c, 6, "step6-solitary", static_cast<int32_t>(ci));
    }

    // remaining vertices know their neighborhoods; those adjacent to every
    // helper vertex keep two units of slack, so they go last
    std::vector<Vertex> outside, inside;
    for (Vertex v : ac.members) {
        if (coloring_.colored(v)) continue;
        auto nb = s_.known_neighborhood(v);
        bool all = true;
        for (Vertex hv : helper_vertices)
            if (!std::binary_search(nb.begin(), nb.end(), hv)) {
                all = false;
                break;
            }
        (all ? inside : outside).push_back(v);
    }
    for (Vertex v : outside) {
        auto c = first_available_known(v);
        if (!c)
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "no color left at vertex " + std::to_string(v)});
        assign_known(v, *c, "step6-solitary", static_cast<int32_t>(ci));
    }
    for (Vertex v : inside) {
        auto c = first_available_known(v);
        if (!c)
            throw StepFailureError({"step6-solitary", static_cast<int32_t>(ci),
                                    "no color left at vertex " + std::to_string(v)});
        assign_known(v, *c, "step6-solitary", static_cast<int32_t>(ci));
    }
    note(ci, "step6-solitary");
}

void Pipeline::step6_postprocess() {
    include_pre_removed_ = true;
    std::vector<uint32_t> order = preprocess_solitary_;
    order.insert(order.end(), preprocess_popular_.begin(), preprocess_popular_.end());
    std::sort(order.begin(), order.end());
    std::set<uint32_t> popular(preprocess_popular_.begin(), preprocess_popular_.end());
    for (uint32_t ci : order) {
        if (popular.count(ci))
            step6_color_popular(ci);
        else
            step6_color_solitary(ci);
    }
}

// ---------------------------------------------------------------------------

PipelineResult Pipeline::run() {
    PipelineResult res;
    try {
        if (!s_.recovery.incomplete.empty()) {
            uint32_t ci = s_.recovery.incomplete.front();
            throw StepFailureError({"recovery", static_cast<int32_t>(ci),
                                    "no helper certified for a non-small almost-clique"});
        }
        step1_preprocess();
        step1_reed_transform();
        step2_slack_generation();
        step3_color_critical();
        step4_color_sparse();
        step4_color_small();
        step5_inverse_reed();
        step6_postprocess();
        for (Vertex v = 0; v < s_.params.n; ++v)
            if (!coloring_.colored(v))
                throw StepFailureError({"final", -1, "vertex " + std::to_string(v) +
                                                          " left uncolored"});
        res.status = PipelineResult::Status::Complete;
    } catch (const StepFailureError& e) {
        res.status = PipelineResult::Status::Incomplete;
        res.report = e.report;
    }
    res.coloring = coloring_;
    res.attribution = attribution_;
    return res;
}

PipelineResult run_pipeline(const StreamSummary& summary) {
    PipelineResult res;
    if (summary.fallback) {
        Graph g = Graph::from_edges(summary.params.n, summary.params.delta,
                                    summary.fallback_edges);
        uint32_t q = summary.params.delta > 0 ? summary.params.delta - 1 : 0;
        FallbackOutcome out;
        ExactColorResult exact = exact_color(g, q);
        out.coloring = exact.coloring;
        out.unsat = exact.unsat;
        res.status = PipelineResult::Status::Fallback;
        res.fallback = out;
        res.coloring = SereneColoring(summary.params.n, q);
        if (exact.coloring) {
            for (Vertex v = 0; v < summary.params.n; ++v)
                res.coloring.set_known(v, exact.coloring->color[v]);
        }
        return res;
    }
    Pipeline p(summary);
    return p.run();
}

} // namespace streamchroma
