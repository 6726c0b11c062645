#pragma once

#include "streamchroma/config.hpp"
#include "streamchroma/decomposition.hpp"
#include "streamchroma/recovery.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace streamchroma {

enum class SizeClass { Small, Critical, Large };

std::string to_string(SizeClass s);

/// small if |C| <= delta+1-rho, large if |C| >= delta+1, critical otherwise.
SizeClass classify_size(size_t clique_size, uint32_t delta, uint64_t rho);

struct FriendInfo {
    Vertex v;
    uint32_t core_neighbors;

    bool operator==(const FriendInfo&) const = default;
};

struct PopularWitness {
    Vertex x1, x2, w, z1, z2;
};

/// Friend classification of one almost-clique at one threshold k.
struct KClassification {
    double k = 0;
    std::vector<FriendInfo> friends; // sorted by vertex
    bool popular = false;
    bool friendly = false;
    std::optional<PopularWitness> witness;
};

/// Everything the pipeline needs to know about one almost-clique.
struct AlmostClique {
    uint32_t index = 0;
    std::vector<Vertex> members; // sorted
    std::vector<Vertex> core;    // sorted; empty when undetermined
    SizeClass size_class = SizeClass::Small;

    bool all_recovered = false;
    bool solitary = false;
    bool solitary_certain = false; // exact status, not just absence of evidence
    bool holey = false;
    bool core_undetermined = false;

    std::vector<std::array<Vertex, 2>> witness_anti_pairs; // 2-anti-matching witness
    std::vector<Vertex> witness_independent_set;           // 3-IS witness
    std::optional<SolitaryHelper> helper;
    uint64_t certified_anti_edges = 0;

    KClassification two_rho, rho_class, alpha_class;

    std::vector<Vertex> x_external, y_external; // X_C / Y_C split at 2*rho

    bool in_core(Vertex v) const;
    bool contains(Vertex v) const;
};

/// Pure post-pass classification over the recovery output.
std::vector<AlmostClique> analyze_structure(const AlmostCliqueDecomposition& acd,
                                            const RecoveryResult& rec,
                                            const EffectiveParams& ep);

/// Fast-path core computation from certified anti-edges (critical,
/// non-solitary) with the exact anti-graph vertex-cover path as desk
/// fallback. Ties break to the lexicographically smallest vertex set.
/// Returns nullopt when recovery gaps block both paths.
std::optional<std::vector<Vertex>> compute_core(const std::vector<Vertex>& members,
                                                const std::vector<Edge>& anti_edges,
                                                bool all_recovered);

/// Fact-3.4 mirror: witness is a 2-anti-matching or a 3-independent set.
struct SolitaryDetection {
    bool solitary = false;
    bool certain = false;
    std::vector<std::array<Vertex, 2>> anti_pairs;
    std::vector<Vertex> independent_set;
};
SolitaryDetection detect_solitary(const std::vector<Vertex>& members,
                                  const std::vector<Edge>& anti_edges, bool all_recovered);

} // namespace streamchroma
