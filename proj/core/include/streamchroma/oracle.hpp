#pragma once

#include "streamchroma/decomposition.hpp"
#include "streamchroma/graph.hpp"
#include "streamchroma/sketch.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace streamchroma {

/// Summary of an exhausted search tree; the UNSAT certificate.
struct UnsatCertificate {
    uint64_t nodes_expanded = 0;
    uint32_t clique_lower_bound = 0;
};

struct ExactColorResult {
    std::optional<PartialColoring> coloring;
    std::optional<UnsatCertificate> unsat;
    uint64_t nodes_expanded = 0;
};

/// Complete q-coloring search: saturation-degree ordering, branch and bound
/// with a greedy clique lower bound. Throws BudgetExceeded past the node cap.
ExactColorResult exact_color(const Graph& g, uint32_t q, uint64_t node_budget = 20'000'000);

/// Exhaustive counterpart of decode_sparse for tiny instances (n <= 30, k <= 3).
struct BruteForceResult {
    enum class Status { Unique, Ambiguous, None } status = Status::None;
    SparseVector vec;
};
BruteForceResult brute_force_recover(const std::vector<uint64_t>& syndromes, uint32_t k,
                                     uint64_t n, uint64_t p);

/// One Def-2.2 / Def-2.3 violation found by exact counting.
struct AcdViolation {
    enum class Kind { Size, AntiNeighbors, ExternalNeighbors, OutsideNonNeighbors, Sparsity };
    Kind kind;
    Vertex vertex = kNoVertexSentinel;
    int32_t clique = -1;
    double measured = 0;
    double threshold = 0;

    static constexpr Vertex kNoVertexSentinel = UINT32_MAX;
    std::string describe() const;
};

/// Exact decomposition check: every sparse vertex eta*eps^2*delta-sparse,
/// every clique an (eps, delta_param)-almost-clique. Empty list iff valid.
std::vector<AcdViolation> check_acd(const Graph& g, const AlmostCliqueDecomposition& acd,
                                    double eta, double eps, double delta_param);

/// Edges inside G[N(v)], the quantity behind zeta-sparsity.
uint64_t neighborhood_edges(const Graph& g, Vertex v);

} // namespace streamchroma
