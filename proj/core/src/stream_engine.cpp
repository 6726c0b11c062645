#include "streamchroma/stream_engine.hpp"

#include "streamchroma/errors.hpp"
#include "streamchroma/rng.hpp"

#include <algorithm>

namespace streamchroma {

uint32_t StreamSummary::known_degree(Vertex v) const {
    auto it = recovery.recovered.find(v);
    if (it == recovery.recovered.end()) throw Error("known_degree on unrecovered vertex");
    int32_t ci = acd.clique_of[v];
    size_t clique_size = ci == kSparse ? 0 : acd.cliques[ci].size();
    return static_cast<uint32_t>(clique_size - 1 - it->second.anti.size() +
                                 it->second.external.size());
}

std::vector<Vertex> StreamSummary::known_neighborhood(Vertex v) const {
    auto it = recovery.recovered.find(v);
    if (it == recovery.recovered.end()) throw Error("known_neighborhood on unrecovered vertex");
    std::vector<Vertex> out;
    int32_t ci = acd.clique_of[v];
    if (ci != kSparse) {
        const auto& members = acd.cliques[ci];
        const auto& anti = it->second.anti;
        for (Vertex u : members) {
            if (u == v) continue;
            if (std::binary_search(anti.begin(), anti.end(), u)) continue;
            out.push_back(u);
        }
    }
    out.insert(out.end(), it->second.external.begin(), it->second.external.end());
    std::sort(out.begin(), out.end());
    return out;
}

StreamState::StreamState(Vertex n, uint32_t delta, const RunConfig& cfg)
    : params_(resolve_params(cfg, n, delta)), acd_oracle_(cfg.acd_oracle) {
    if (params_.fallback) return; // store-everything mode, nothing to sample

    palettes_ = sample_palettes(n, params_);

    FieldParams fparams{params_.prime, n};
    banks_.resize(params_.levels);
    bank_index_.assign(params_.levels, std::vector<int64_t>(n, -1));
    for (uint32_t i = 0; i < params_.levels; ++i) {
        SketchBank& bank = banks_[i];
        bank.level = i;
        bank.s_i = params_.sparsity_level(i);
        bank.p_i = params_.level_prob(i);
        bank.matrix_seed = derive_seed(params_.seed, rng_tag::kFingerprintMatrix, i);
        for (Vertex v = 0; v < n; ++v) {
            if (!keyed_bernoulli(params_.seed, rng_tag::kLevelSample, i, v, bank.p_i)) continue;
            bank_index_[i][v] = static_cast<int64_t>(bank.sampled.size());
            bank.sampled.push_back(v);
            bank.vand.emplace_back(fparams, static_cast<uint32_t>(bank.s_i));
            bank.fp.emplace_back(fparams, params_.fingerprint_rows, bank.matrix_seed);
            bank.vand.back().add(v, 1); // y(v), z(v) start at the vertex's own column
            bank.fp.back().add(v, 1);
        }
    }

    anchors_.prob = params_.anchor_prob;
    anchors_.is_anchor.assign(n, false);
    for (Vertex v = 0; v < n; ++v)
        anchors_.is_anchor[v] =
            keyed_bernoulli(params_.seed, rng_tag::kAnchorSample, 0, v, params_.anchor_prob);
}

void StreamState::process_edge(Vertex u, Vertex v) {
    ++processed_;
    if (params_.fallback) {
        fallback_edges_.push_back(canonical(u, v));
        return;
    }
    if (palettes_.lists_intersect(u, v)) sparsified_.push_back(canonical(u, v));
    for (uint32_t i = 0; i < params_.levels; ++i) {
        int64_t iu = bank_index_[i][u];
        if (iu >= 0) {
            banks_[i].vand[iu].add(v, 1);
            banks_[i].fp[iu].add(v, 1);
        }
        int64_t iv = bank_index_[i][v];
        if (iv >= 0) {
            banks_[i].vand[iv].add(u, 1);
            banks_[i].fp[iv].add(u, 1);
        }
    }
    if (anchors_.is_anchor[u] || anchors_.is_anchor[v])
        anchors_.edges.push_back(canonical(u, v));
}

SpaceReport StreamState::space_report() const {
    SpaceReport r;
    r.bytes_palettes = palettes_.bytes();
    r.bytes_sparsified = sparsified_.size() * sizeof(Edge);
    for (const auto& bank : banks_) r.bytes_sketches += bank.field_elements() * sizeof(uint64_t);
    r.bytes_anchors = anchors_.bytes();
    r.bytes_fallback = fallback_edges_.size() * sizeof(Edge);
    // all components grow monotonically during the pass
    r.peak_total = r.total();
    return r;
}

StreamSummary StreamState::finalize(const Graph* oracle_graph) {
    StreamSummary s;
    s.params = params_;
    s.space = space_report();
    s.fallback = params_.fallback;

    std::sort(sparsified_.begin(), sparsified_.end());
    sparsified_.erase(std::unique(sparsified_.begin(), sparsified_.end()), sparsified_.end());
    std::sort(fallback_edges_.begin(), fallback_edges_.end());
    std::sort(anchors_.edges.begin(), anchors_.edges.end());
    anchors_.edges.erase(std::unique(anchors_.edges.begin(), anchors_.edges.end()),
                         anchors_.edges.end());

    if (params_.fallback) {
        s.fallback_edges = std::move(fallback_edges_);
        return s;
    }

    s.palettes = std::move(palettes_);
    s.sparsified = std::move(sparsified_);

    if (acd_oracle_) {
        if (!oracle_graph) throw Error("acd_oracle set but no replayed graph supplied");
        s.acd = build_decomposition_exact(*oracle_graph, params_);
    } else {
        s.acd = build_decomposition_from_anchors(anchors_, params_);
    }

    s.recovery = recover_dense_neighborhoods(banks_, s.acd, params_);
    s.cliques = analyze_structure(s.acd, s.recovery, params_);
    s.banks = std::move(banks_);
    return s;
}

StreamSummary run_pass(const EdgeStream& stream, const RunConfig& cfg, const Graph* oracle_graph) {
    StreamState state(stream.n, stream.delta, cfg);
    for (const Edge& e : stream.edges) state.process_edge(e.u, e.v);
    Graph replay;
    const Graph* oracle = oracle_graph;
    if (cfg.acd_oracle && !oracle) {
        replay = stream.to_graph();
        oracle = &replay;
    }
    return state.finalize(oracle);
}

} // namespace streamchroma
