#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace streamchroma {

using Vertex = uint32_t;
constexpr Vertex kNoVertex = UINT32_MAX;
constexpr uint32_t kUncolored = 0; // colors are 1..q

struct Edge {
    Vertex u, v;

    bool operator==(const Edge&) const = default;
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

inline Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple graph with sorted adjacency lists and a declared maximum degree.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    Graph() = default;
    Graph(Vertex n, uint32_t delta) : delta_(delta), adj_(n) {}

    /// Build from an edge list; validates simplicity and the degree bound.
    static Graph from_edges(Vertex n, uint32_t delta, const std::vector<Edge>& edges);

    Vertex n() const { return static_cast<Vertex>(adj_.size()); }
    uint32_t delta() const { return delta_; }
    size_t m() const { return m_; }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    uint32_t degree(Vertex v) const { return static_cast<uint32_t>(adj_[v].size()); }
    bool adjacent(Vertex u, Vertex v) const;
    uint32_t max_degree() const;

    std::vector<Edge> edges() const;

    // construction helpers; finalize() sorts adjacency and fixes m
    void add_edge_unchecked(Vertex u, Vertex v);
    void finalize();

private:
    uint32_t delta_ = 0;
    size_t m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

/// Header plus once-only edge sequence. Materialized form of a stream.
struct EdgeStream {
    Vertex n = 0;
    uint32_t delta = 0;
    std::vector<Edge> edges; // in stream order

    Graph to_graph() const { return Graph::from_edges(n, delta, edges); }
};

/// Incremental reader over the text format: header line "n delta", then one
/// "u v" line per edge. Never buffers the body.
class EdgeStreamReader {
public:
    /// check_duplicates costs Theta(m) space, so it is off by default.
    explicit EdgeStreamReader(std::istream& in, bool check_duplicates = false);

    Vertex n() const { return n_; }
    uint32_t delta() const { return delta_; }

    /// Next edge in file order; nullopt at end of stream.
    std::optional<Edge> next();

private:
    std::istream& in_;
    Vertex n_ = 0;
    uint32_t delta_ = 0;
    bool check_duplicates_;
    size_t line_ = 1;
    std::vector<std::vector<Vertex>> seen_;
};

EdgeStream read_edge_stream(std::istream& in, bool check_duplicates = false);
void write_edge_stream(std::ostream& out, const EdgeStream& stream);

/// Per-vertex color in [1..q] or kUncolored.
struct PartialColoring {
    std::vector<uint32_t> color;
    uint32_t q = 0;

    PartialColoring() = default;
    PartialColoring(Vertex n, uint32_t q_) : color(n, kUncolored), q(q_) {}

    bool colored(Vertex v) const { return color[v] != kUncolored; }
    size_t domain_size() const;
};

struct ColoringReport {
    bool proper = false;
    uint32_t colors_used = 0;
    Vertex uncolored_count = 0;
    std::optional<Edge> first_violation;
    bool within_budget = false; // colors_used <= q
};

/// Total check of properness and palette use against the full graph.
ColoringReport verify_coloring(const Graph& g, const PartialColoring& c, uint32_t q);

void write_coloring(std::ostream& out, const PartialColoring& c);
PartialColoring read_coloring(std::istream& in, Vertex n, uint32_t q);

/// Exact clique search (branch and bound with greedy coloring bound).
/// Desk scale only; throws BudgetExceeded past node_budget expansions.
bool has_clique_of_size(const Graph& g, uint32_t s, uint64_t node_budget = 50'000'000);

} // namespace streamchroma
