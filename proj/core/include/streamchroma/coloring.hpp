#pragma once

#include "streamchroma/graph.hpp"

#include <cstdint>
#include <vector>

namespace streamchroma {

/// How a vertex got its color. FromList(i) means the color came from the
/// pre-sampled list L_i; NeighborhoodKnown means the vertex's full
/// neighborhood was recovered, so any color is safe to assign.
struct Provenance {
    enum class Kind : uint8_t { None, FromList, NeighborhoodKnown };
    Kind kind = Kind::None;
    uint8_t list_index = 0;
};

/// Partial coloring over [delta-1] where every colored vertex carries its
/// provenance, making the conflict-safety discipline checkable.
struct SereneColoring {
    PartialColoring base;
    std::vector<Provenance> prov;

    SereneColoring() = default;
    SereneColoring(Vertex n, uint32_t q) : base(n, q), prov(n) {}

    Vertex n() const { return static_cast<Vertex>(base.color.size()); }
    bool colored(Vertex v) const { return base.colored(v); }
    uint32_t color(Vertex v) const { return base.color[v]; }

    void set_from_list(Vertex v, uint32_t color, uint8_t list_index) {
        base.color[v] = color;
        prov[v] = {Provenance::Kind::FromList, list_index};
    }
    void set_known(Vertex v, uint32_t color) {
        base.color[v] = color;
        prov[v] = {Provenance::Kind::NeighborhoodKnown, 0};
    }
    void uncolor(Vertex v) {
        base.color[v] = kUncolored;
        prov[v] = {Provenance::Kind::None, 0};
    }
};

} // namespace streamchroma
