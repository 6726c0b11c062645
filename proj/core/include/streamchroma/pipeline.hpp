#pragma once

#include "streamchroma/coloring.hpp"
#include "streamchroma/known_graph.hpp"
#include "streamchroma/matching.hpp"
#include "streamchroma/oracle.hpp"
#include "streamchroma/reed_transform.hpp"
#include "streamchroma/stream_engine.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace streamchroma {

/// A surfaced probabilistic failure: which step, which clique, what witness.
/// Failure paths produce this, never an unverified coloring.
struct IncompleteReport {
    std::string step;
    int32_t clique = -1;
    std::string witness;

    std::string to_text() const;
};

/// Carrier for surfaced step failures inside the pipeline.
struct StepFailureError : Error {
    IncompleteReport report;
    explicit StepFailureError(IncompleteReport r) : Error(r.to_text()), report(std::move(r)) {}
};

struct FallbackOutcome {
    std::optional<PartialColoring> coloring;
    std::optional<UnsatCertificate> unsat;
};

struct PipelineResult {
    enum class Status { Complete, Fallback, Incomplete };
    Status status = Status::Incomplete;
    SereneColoring coloring;
    std::optional<FallbackOutcome> fallback;
    std::optional<IncompleteReport> report;
    std::vector<std::pair<uint32_t, std::string>> attribution; // clique -> step
};

/// Palette graph of one almost-clique: uncolored members against the colors
/// unused inside it, with the list-sampled subgraph the matching runs on.
struct PaletteGraph {
    std::vector<Vertex> left;           // uncolored members, ascending
    std::vector<uint32_t> right_colors; // colors used by no member, ascending
    BipartiteGraph availability;        // full availability edges
    BipartiteGraph sampled;             // restricted to the list family
};

/// Matching or FAIL: nullopt iff the maximum matching misses part of L.
std::optional<std::vector<uint32_t>> find_l_perfect_matching(const BipartiteGraph& g);

/// Steps 1-6 over a stream summary. The steps are public so tests can drive
/// and inspect each one; run() executes them in order and converts surfaced
/// failures into an IncompleteReport.
class Pipeline {
public:
    explicit Pipeline(const StreamSummary& summary);

    void step1_preprocess();
    void step1_reed_transform();
    void step2_slack_generation();
    void step3_color_critical();
    void step4_color_sparse();
    void step4_color_small();
    void step5_inverse_reed();
    void step6_postprocess();

    PipelineResult run();

    // inspection
    const SereneColoring& coloring() const { return coloring_; }
    SereneColoring& coloring() { return coloring_; }
    const ReedTransformRecord& record() const { return record_; }
    const KnownGraph& known() const { return known_; }
    bool in_h(Vertex v) const { return !removed_pre_[v] && !removed_rt_[v]; }
    std::vector<uint32_t> h_clique_indices() const;
    /// Exact degree of a recovered vertex in the current (masked) graph.
    uint32_t current_degree(Vertex v) const;
    PaletteGraph build_palette_graph(uint32_t clique_index, int list_index) const;
    const std::vector<std::pair<uint32_t, std::string>>& attribution() const {
        return attribution_;
    }

private:
    friend struct PipelineTestHook;

    const StreamSummary& s_;
    KnownGraph known_;
    uint32_t q_ = 0; // delta - 1
    SereneColoring coloring_;
    ReedTransformRecord record_;

    std::vector<bool> removed_pre_, removed_rt_;
    std::vector<std::vector<Vertex>> extra_adj_; // E_new adjacency
    bool use_extra_ = true;                      // E_new participates until step 5
    bool include_rt_removed_ = false;            // step >= 5: RT cliques are back
    bool include_pre_removed_ = false;           // step 6: everything is back

    std::vector<uint32_t> preprocess_solitary_, preprocess_popular_;
    std::vector<std::pair<uint32_t, std::string>> attribution_;
    std::vector<std::pair<Vertex, std::vector<Vertex>>> z_groups_; // filled in step 5

    // masked adjacency and availability helpers
    bool vertex_present(Vertex v) const;
    void for_each_known_neighbor(Vertex v, const std::function<void(Vertex)>& fn) const;
    uint32_t list_size(Vertex v) const;         // |L_psi(v)| over known neighbors
    uint32_t uncolored_in(Vertex v, const std::vector<bool>& batch) const;
    std::optional<uint32_t> first_available_known(Vertex v) const;
    std::optional<uint32_t> first_available_from_list(Vertex v, int list_index) const;
    bool color_available(Vertex v, uint32_t c) const;
    void assign_known(Vertex v, uint32_t c, const char* step, int32_t clique);
    void assign_list(Vertex v, uint32_t c, uint8_t list_index, const char* step, int32_t clique);

    // step internals
    void extend_critical_batch(const std::vector<uint32_t>& batch, const char* step_name);
    void color_clique_greedy(uint32_t ci, Vertex u, Vertex v, const std::vector<bool>& batch,
                             const char* step_name);
    std::optional<std::pair<Vertex, Vertex>> find_witness_pair(uint32_t ci,
                                                               const std::vector<bool>& batch) const;
    void select_z_vertices();
    void step6_color_popular(uint32_t ci);
    void step6_color_solitary(uint32_t ci);
    void color_small_via_matching(uint32_t ci, int list_index, const char* step_name);
    void note(uint32_t ci, const char* tag);
};

/// Full pipeline over a summary; exact fallback when the summary says so.
PipelineResult run_pipeline(const StreamSummary& summary);

} // namespace streamchroma
