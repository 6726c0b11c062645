#pragma once

#include "streamchroma/config.hpp"
#include "streamchroma/decomposition.hpp"
#include "streamchroma/graph.hpp"
#include "streamchroma/sketch.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace streamchroma {

/// One level of the recovery structure: sampled vertex set V_i with one
/// syndrome sketch (2 s_i rows) and one fingerprint (t rows) per vertex.
struct SketchBank {
    uint32_t level = 0;
    uint64_t s_i = 0;
    double p_i = 1.0;
    uint64_t matrix_seed = 0;
    std::vector<Vertex> sampled; // sorted
    std::vector<VandermondeSketch> vand;
    std::vector<FingerprintSketch> fp;

    int64_t index_of(Vertex v) const;
    size_t field_elements() const; // |V_i| * (2 s_i + t)
};

/// Decoded A(v), E(v) for one dense vertex. The full neighborhood follows:
/// N(v) = (C - A(v) - v) + E(v).
struct RecoveredNeighborhood {
    std::vector<Vertex> anti;     // A(v), sorted, within the vertex's clique
    std::vector<Vertex> external; // E(v), sorted
    uint32_t level = 0;           // level that certified the decode
};

using RecoveredMap = std::map<Vertex, RecoveredNeighborhood>;

/// Helper structure certifying a solitary almost-clique colorable.
struct SolitaryHelper {
    enum class Kind { AntiMatching, IndependentSet };
    Kind kind = Kind::AntiMatching;
    // AntiMatching: anti-edges {known[0], partners[0]}, {known[1], partners[1]};
    // IndependentSet: 3-IS {known[0], known[1], partners[0]}.
    // Neighborhoods of known[0], known[1] are recovered.
    std::array<Vertex, 2> known{kNoVertex2, kNoVertex2};
    std::array<Vertex, 2> partners{kNoVertex2, kNoVertex2};

    static constexpr Vertex kNoVertex2 = UINT32_MAX;
};

struct RecoveryResult {
    RecoveredMap recovered;
    std::map<uint32_t, SolitaryHelper> helpers; // clique index -> helper
    std::vector<uint32_t> incomplete;           // cliques with no certification
    // certified anti-edges per clique, canonical and sorted
    std::map<uint32_t, std::vector<Edge>> anti_edges;
};

/// Post-pass decoding: for each dense vertex, escalate through the levels it
/// was sampled at, accept the first fingerprint-certified candidate, then
/// assemble solitary helpers from the certified anti-edges.
RecoveryResult recover_dense_neighborhoods(const std::vector<SketchBank>& banks,
                                           const AlmostCliqueDecomposition& acd,
                                           const EffectiveParams& ep);

} // namespace streamchroma
