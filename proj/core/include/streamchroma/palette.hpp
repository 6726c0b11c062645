#pragma once

#include "streamchroma/config.hpp"
#include "streamchroma/graph.hpp"

#include <cstdint>
#include <vector>

namespace streamchroma {

/// Pre-pass color lists over [delta-1], one family per pipeline step.
/// L2 is a single uniform color; L3..L6 are independent Bernoulli subsets at
/// the resolved rates. Sampled once, never mutated.
struct PaletteLists {
    uint32_t delta = 0;
    std::vector<uint32_t> l2;                 // one color per vertex
    std::vector<std::vector<uint32_t>> l3, l4, l5, l6; // sorted
    std::vector<std::vector<uint32_t>> merged;         // L(v), sorted union

    bool lists_intersect(Vertex u, Vertex v) const;
    bool in_union(Vertex v, uint32_t color) const;
    const std::vector<uint32_t>& list(int index, Vertex v) const;
    size_t bytes() const;
};

PaletteLists sample_palettes(Vertex n, const EffectiveParams& ep);

} // namespace streamchroma
