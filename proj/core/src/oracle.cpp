#include "streamchroma/oracle.hpp"

#include "streamchroma/errors.hpp"
#include "streamchroma/field.hpp"

#include <algorithm>
#include <sstream>

namespace streamchroma {

namespace {

struct DsaturSearch {
    const Graph& g;
    uint32_t q;
    uint64_t budget;
    uint64_t expanded = 0;
    std::vector<uint32_t> color;                 // 0 = uncolored
    std::vector<std::vector<uint32_t>> sat_count; // [v][c-1] = colored neighbors with c
    std::vector<uint32_t> sat_degree;

    DsaturSearch(const Graph& graph, uint32_t colors, uint64_t node_budget)
        : g(graph), q(colors), budget(node_budget), color(graph.n(), 0),
          sat_count(graph.n(), std::vector<uint32_t>(colors, 0)), sat_degree(graph.n(), 0) {}

    void assign(Vertex v, uint32_t c) {
        color[v] = c;
        for (Vertex u : g.neighbors(v))
            if (color[u] == 0 && sat_count[u][c - 1]++ == 0) ++sat_degree[u];
    }
    void unassign(Vertex v, uint32_t c) {
        color[v] = 0;
        for (Vertex u : g.neighbors(v))
            if (color[u] == 0 && --sat_count[u][c - 1] == 0) --sat_degree[u];
    }

    Vertex pick() const {
        Vertex best = kNoVertex;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (color[v] != 0) continue;
            if (best == kNoVertex || sat_degree[v] > sat_degree[best] ||
                (sat_degree[v] == sat_degree[best] && g.degree(v) > g.degree(best)))
                best = v;
        }
        return best;
    }

    bool solve(uint32_t colored, uint32_t max_used) {
        if (++expanded > budget) throw BudgetExceeded("exact_color budget exhausted");
        if (colored == g.n()) return true;
        Vertex v = pick();
        if (sat_degree[v] >= q) return false;
        // symmetry breaking: at most one brand-new color
        uint32_t limit = std::min(q, max_used + 1);
        for (uint32_t c = 1; c <= limit; ++c) {
            if (sat_count[v][c - 1] != 0) continue;
            assign(v, c);
            if (solve(colored + 1, std::max(max_used, c))) return true;
            unassign(v, c);
        }
        return false;
    }

private:
    static constexpr Vertex kNoVertex = UINT32_MAX;
};

uint32_t greedy_clique_bound(const Graph& g) {
    // grow a clique from each of the top-degree vertices
    std::vector<Vertex> order(g.n());
    for (Vertex v = 0; v < g.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    uint32_t best = 0;
    uint32_t tries = std::min<uint32_t>(g.n(), 16);
    for (uint32_t t = 0; t < tries; ++t) {
        std::vector<Vertex> clique{order[t]};
        for (Vertex v : g.neighbors(order[t])) {
            bool ok = true;
            for (Vertex u : clique)
                if (!g.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(v);
        }
        best = std::max<uint32_t>(best, static_cast<uint32_t>(clique.size()));
    }
    return best;
}

} // namespace

ExactColorResult exact_color(const Graph& g, uint32_t q, uint64_t node_budget) {
    ExactColorResult res;
    uint32_t lb = greedy_clique_bound(g);
    if (lb > q) {
        res.unsat = UnsatCertificate{0, lb};
        return res;
    }
    if (q == 0) {
        if (g.n() == 0) {
            res.coloring = PartialColoring(0, 0);
        } else {
            res.unsat = UnsatCertificate{0, lb};
        }
        return res;
    }
    DsaturSearch search(g, q, node_budget);
    if (search.solve(0, 0)) {
        PartialColoring c(g.n(), q);
        c.color = search.color;
        res.coloring = std::move(c);
    } else {
        res.unsat = UnsatCertificate{search.expanded, lb};
    }
    res.nodes_expanded = search.expanded;
    return res;
}

namespace {

// Solve the |support| x |support| Vandermonde system on the candidate support
// against the first |support| syndromes, then check all rows.
std::optional<SparseVector> try_support(const Fp& f, const std::vector<uint64_t>& syndromes,
                                        const std::vector<uint64_t>& support, uint64_t /*n*/,
                                        const FieldParams& params, uint32_t k) {
    size_t s = support.size();
    std::vector<std::vector<uint64_t>> m(s, std::vector<uint64_t>(s + 1, 0));
    for (size_t i = 0; i < s; ++i) {
        for (size_t a = 0; a < s; ++a) m[i][a] = f.pow(support[a] + 1, i);
        m[i][s] = syndromes[i];
    }
    for (size_t col = 0; col < s; ++col) {
        size_t piv = col;
        while (piv < s && m[piv][col] == 0) ++piv;
        if (piv == s) return std::nullopt;
        std::swap(m[col], m[piv]);
        uint64_t ipiv = f.inv(m[col][col]);
        for (size_t j = col; j <= s; ++j) m[col][j] = f.mul(m[col][j], ipiv);
        for (size_t r = 0; r < s; ++r) {
            if (r == col || m[r][col] == 0) continue;
            uint64_t factor = m[r][col];
            for (size_t j = col; j <= s; ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[col][j]));
        }
    }
    SparseVector vec;
    for (size_t a = 0; a < s; ++a)
        if (m[a][s] != 0) vec.push_back({support[a], m[a][s]});
    if (encode_syndromes(params, k, vec) != syndromes) return std::nullopt;
    return vec;
}

} // namespace

BruteForceResult brute_force_recover(const std::vector<uint64_t>& syndromes, uint32_t k,
                                     uint64_t n, uint64_t p) {
    FieldParams params{p, n};
    Fp f(p);
    BruteForceResult res;
    bool zero = std::all_of(syndromes.begin(), syndromes.end(), [](uint64_t v) { return v == 0; });
    if (zero) {
        res.status = BruteForceResult::Status::Unique;
        return res;
    }

    std::vector<SparseVector> found;
    std::vector<uint64_t> support;
    // enumerate supports of size 1..k
    auto recurse = [&](auto&& self, uint64_t start, uint32_t remaining) -> void {
        if (!support.empty()) {
            if (auto vec = try_support(f, syndromes, support, n, params, k)) {
                if (std::find(found.begin(), found.end(), *vec) == found.end())
                    found.push_back(*vec);
            }
        }
        if (remaining == 0 || found.size() > 1) return;
        for (uint64_t j = start; j < n; ++j) {
            support.push_back(j);
            self(self, j + 1, remaining - 1);
            support.pop_back();
            if (found.size() > 1) return;
        }
    };
    recurse(recurse, 0, k);

    if (found.empty()) {
        res.status = BruteForceResult::Status::None;
    } else if (found.size() == 1) {
        res.status = BruteForceResult::Status::Unique;
        res.vec = found.front();
    } else {
        res.status = BruteForceResult::Status::Ambiguous;
    }
    return res;
}

std::string AcdViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Size: os << "size"; break;
        case Kind::AntiNeighbors: os << "anti-neighbors"; break;
        case Kind::ExternalNeighbors: os << "external-neighbors"; break;
        case Kind::OutsideNonNeighbors: os << "outside-non-neighbors"; break;
        case Kind::Sparsity: os << "sparsity"; break;
    }
    os << " violation";
    if (vertex != kNoVertexSentinel) os << " at vertex " << vertex;
    if (clique >= 0) os << " (clique " << clique << ")";
    os << ": " << measured << " vs threshold " << threshold;
    return os.str();
}

uint64_t neighborhood_edges(const Graph& g, Vertex v) {
    const auto& nbrs = g.neighbors(v);
    uint64_t count = 0;
    for (size_t i = 0; i < nbrs.size(); ++i) {
        const auto& a = g.neighbors(nbrs[i]);
        for (size_t j = i + 1; j < nbrs.size(); ++j)
            if (std::binary_search(a.begin(), a.end(), nbrs[j])) ++count;
    }
    return count;
}

std::vector<AcdViolation> check_acd(const Graph& g, const AlmostCliqueDecomposition& acd,
                                    double eta, double eps, double delta_param) {
    std::vector<AcdViolation> out;
    double delta = g.delta();
    double zeta = eta * eps * eps * delta;

    for (Vertex v = 0; v < g.n(); ++v) {
        if (!acd.sparse(v)) continue;
        double max_edges = delta * (delta - 1) / 2.0 - zeta * delta;
        double have = static_cast<double>(neighborhood_edges(g, v));
        if (have > max_edges)
            out.push_back({AcdViolation::Kind::Sparsity, v, kSparse, have, max_edges});
    }

    for (size_t i = 0; i < acd.cliques.size(); ++i) {
        const auto& c = acd.cliques[i];
        double sz = static_cast<double>(c.size());
        if (sz < (1.0 - eps / 2.0) * delta || sz > (1.0 + eps / 2.0) * delta)
            out.push_back({AcdViolation::Kind::Size, AcdViolation::kNoVertexSentinel,
                           static_cast<int32_t>(i), sz, (1.0 - eps / 2.0) * delta});
        for (Vertex v : c) {
            uint32_t in = 0;
            for (Vertex u : g.neighbors(v))
                if (acd.clique_of[u] == static_cast<int32_t>(i)) ++in;
            double anti = sz - 1.0 - in;
            double ext = static_cast<double>(g.degree(v)) - in;
            if (anti > eps * delta)
                out.push_back({AcdViolation::Kind::AntiNeighbors, v, static_cast<int32_t>(i),
                               anti, eps * delta});
            if (ext > eps * delta)
                out.push_back({AcdViolation::Kind::ExternalNeighbors, v, static_cast<int32_t>(i),
                               ext, eps * delta});
        }
        // part (3): outside vertices need delta_param * delta non-neighbors in C
        for (Vertex v = 0; v < g.n(); ++v) {
            if (acd.clique_of[v] == static_cast<int32_t>(i)) continue;
            uint32_t in = 0;
            for (Vertex u : g.neighbors(v))
                if (acd.clique_of[u] == static_cast<int32_t>(i)) ++in;
            double non = sz - in;
            if (non < delta_param * delta)
                out.push_back({AcdViolation::Kind::OutsideNonNeighbors, v,
                               static_cast<int32_t>(i), non, delta_param * delta});
        }
    }
    return out;
}

} // namespace streamchroma
