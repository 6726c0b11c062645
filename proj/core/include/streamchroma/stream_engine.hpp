#pragma once

#include "streamchroma/config.hpp"
#include "streamchroma/decomposition.hpp"
#include "streamchroma/graph.hpp"
#include "streamchroma/palette.hpp"
#include "streamchroma/recovery.hpp"
#include "streamchroma/structure.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace streamchroma {

struct SpaceReport {
    size_t bytes_palettes = 0;
    size_t bytes_sparsified = 0;
    size_t bytes_sketches = 0;
    size_t bytes_anchors = 0;
    size_t bytes_fallback = 0;
    size_t peak_total = 0;

    size_t total() const {
        return bytes_palettes + bytes_sparsified + bytes_sketches + bytes_anchors + bytes_fallback;
    }
};

/// Everything the coloring steps may consult after the pass: palettes, the
/// sparsified graph, the decomposition, recovered neighborhoods, helpers,
/// classifications, the retained sketch banks, and the space audit.
struct StreamSummary {
    EffectiveParams params;
    bool fallback = false;

    PaletteLists palettes;
    std::vector<Edge> sparsified;     // canonical, sorted
    std::vector<Edge> fallback_edges; // full graph, fallback mode only

    AlmostCliqueDecomposition acd;
    RecoveryResult recovery;
    std::vector<AlmostClique> cliques;
    std::vector<SketchBank> banks; // retained for late re-queries

    SpaceReport space;

    bool vertex_known(Vertex v) const { return recovery.recovered.count(v) > 0; }
    /// Exact degree in G for a recovered vertex.
    uint32_t known_degree(Vertex v) const;
    /// Full N(v) for a recovered vertex: (C - A(v) - v) + E(v), sorted.
    std::vector<Vertex> known_neighborhood(Vertex v) const;
};

/// The single pass. All pre-pass randomness (palettes, level samples, anchor
/// samples) is fixed at construction; per-edge updates are commutative, so
/// the summary does not depend on the stream order.
class StreamState {
public:
    StreamState(Vertex n, uint32_t delta, const RunConfig& cfg);

    const EffectiveParams& params() const { return params_; }
    bool fallback() const { return params_.fallback; }

    void process_edge(Vertex u, Vertex v);

    SpaceReport space_report() const;

    /// Post-pass: decomposition, recovery, classification, space audit.
    /// oracle_graph feeds the exact decomposition when cfg.acd_oracle is set.
    StreamSummary finalize(const Graph* oracle_graph = nullptr);

    // inspection hooks for tests
    const PaletteLists& palettes() const { return palettes_; }
    const std::vector<SketchBank>& banks() const { return banks_; }
    const std::vector<Edge>& sparsified_edges() const { return sparsified_; }
    const AnchorData& anchors() const { return anchors_; }

private:
    EffectiveParams params_;
    bool acd_oracle_ = false;
    PaletteLists palettes_;
    std::vector<SketchBank> banks_;
    std::vector<std::vector<int64_t>> bank_index_; // [level][v] -> sketch slot or -1
    std::vector<Edge> sparsified_;
    AnchorData anchors_;
    std::vector<Edge> fallback_edges_;
    size_t processed_ = 0;
};

/// Convenience: run a whole materialized stream through a fresh state.
StreamSummary run_pass(const EdgeStream& stream, const RunConfig& cfg,
                       const Graph* oracle_graph = nullptr);

} // namespace streamchroma
