#include "streamchroma/graph.hpp"

#include "streamchroma/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace streamchroma {

Graph Graph::from_edges(Vertex n, uint32_t delta, const std::vector<Edge>& edges) {
    Graph g(n, delta);
    for (const Edge& e : edges) {
        if (e.u == e.v) throw SelfLoop("self-loop at vertex " + std::to_string(e.u));
        if (e.u >= n || e.v >= n)
            throw VertexOutOfRange("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                   ") outside [0," + std::to_string(n) + ")");
        g.add_edge_unchecked(e.u, e.v);
    }
    g.finalize();
    return g;
}

void Graph::add_edge_unchecked(Vertex u, Vertex v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

void Graph::finalize() {
    m_ = 0;
    for (Vertex v = 0; v < n(); ++v) {
        auto& a = adj_[v];
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw DuplicateEdge("duplicate edge at vertex " + std::to_string(v));
        m_ += a.size();
    }
    m_ /= 2;
    if (max_degree() > delta_)
        throw VertexOutOfRange("max degree " + std::to_string(max_degree()) +
                               " exceeds declared delta " + std::to_string(delta_));
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

uint32_t Graph::max_degree() const {
    uint32_t d = 0;
    for (const auto& a : adj_) d = std::max<uint32_t>(d, static_cast<uint32_t>(a.size()));
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.push_back({u, v});
    return out;
}

EdgeStreamReader::EdgeStreamReader(std::istream& in, bool check_duplicates)
    : in_(in), check_duplicates_(check_duplicates) {
    std::string header;
    if (!std::getline(in_, header)) throw MalformedHeader("empty stream");
    std::istringstream hs(header);
    long long n = -1, delta = -1;
    if (!(hs >> n >> delta) || n < 0 || delta < 0)
        throw MalformedHeader("bad header line: '" + header + "'");
    std::string rest;
    if (hs >> rest) throw MalformedHeader("trailing tokens in header: '" + header + "'");
    n_ = static_cast<Vertex>(n);
    delta_ = static_cast<uint32_t>(delta);
    if (check_duplicates_) seen_.resize(n_);
}

std::optional<Edge> EdgeStreamReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long u = -1, v = -1;
        if (!(ls >> u >> v))
            throw MalformedHeader("bad edge line " + std::to_string(line_) + ": '" + line + "'");
        if (u < 0 || v < 0 || u >= static_cast<long long>(n_) || v >= static_cast<long long>(n_))
            throw VertexOutOfRange("line " + std::to_string(line_) + ": vertex outside [0," +
                                   std::to_string(n_) + ")");
        if (u == v) throw SelfLoop("line " + std::to_string(line_) + ": self-loop at " +
                                   std::to_string(u));
        Edge e = canonical(static_cast<Vertex>(u), static_cast<Vertex>(v));
        if (check_duplicates_) {
            auto& bucket = seen_[e.u];
            if (std::find(bucket.begin(), bucket.end(), e.v) != bucket.end())
                throw DuplicateEdge("line " + std::to_string(line_) + ": edge repeats");
            bucket.push_back(e.v);
        }
        return e;
    }
    return std::nullopt;
}

EdgeStream read_edge_stream(std::istream& in, bool check_duplicates) {
    EdgeStreamReader reader(in, check_duplicates);
    EdgeStream s;
    s.n = reader.n();
    s.delta = reader.delta();
    while (auto e = reader.next()) s.edges.push_back(*e);
    return s;
}

void write_edge_stream(std::ostream& out, const EdgeStream& stream) {
    out << stream.n << ' ' << stream.delta << '\n';
    for (const Edge& e : stream.edges) out << e.u << ' ' << e.v << '\n';
}

size_t PartialColoring::domain_size() const {
    size_t d = 0;
    for (uint32_t c : color) d += (c != kUncolored);
    return d;
}

ColoringReport verify_coloring(const Graph& g, const PartialColoring& c, uint32_t q) {
    ColoringReport rep;
    rep.proper = true;
    std::vector<bool> used(q + 2, false);
    uint32_t max_color = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        uint32_t cv = c.color[v];
        if (cv == kUncolored) {
            ++rep.uncolored_count;
            continue;
        }
        max_color = std::max(max_color, cv);
        if (cv < used.size()) used[cv] = true;
        for (Vertex u : g.neighbors(v)) {
            if (u > v && c.color[u] == cv) {
                rep.proper = false;
                if (!rep.first_violation) rep.first_violation = Edge{v, u};
            }
        }
    }
    uint32_t distinct = 0;
    for (size_t i = 1; i < used.size(); ++i) distinct += used[i];
    rep.colors_used = distinct;
    rep.within_budget = max_color <= q;
    return rep;
}

void write_coloring(std::ostream& out, const PartialColoring& c) {
    for (Vertex v = 0; v < c.color.size(); ++v) {
        out << v << ' ';
        if (c.color[v] == kUncolored)
            out << '-';
        else
            out << c.color[v];
        out << '\n';
    }
}

PartialColoring read_coloring(std::istream& in, Vertex n, uint32_t q) {
    PartialColoring c(n, q);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long v;
        std::string tok;
        if (!(ls >> v >> tok)) throw MalformedHeader("bad coloring line: '" + line + "'");
        if (v < 0 || v >= static_cast<long long>(n)) throw VertexOutOfRange("coloring vertex out of range");
        c.color[v] = tok == "-" ? kUncolored : static_cast<uint32_t>(std::stoul(tok));
    }
    return c;
}

namespace {

struct CliqueSearch {
    const Graph& g;
    uint32_t target;
    uint64_t budget;
    uint64_t expanded = 0;

    // Greedy-coloring upper bound on the clique number of the candidate set;
    // prunes dense non-clique blocks fast.
    uint32_t color_bound(const std::vector<Vertex>& cand) const {
        std::vector<uint32_t> cls;
        std::vector<std::vector<Vertex>> classes;
        for (Vertex v : cand) {
            bool placed = false;
            for (auto& cl : classes) {
                bool indep = true;
                for (Vertex u : cl)
                    if (g.adjacent(u, v)) {
                        indep = false;
                        break;
                    }
                if (indep) {
                    cl.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({v});
        }
        return static_cast<uint32_t>(classes.size());
    }

    bool expand(std::vector<Vertex>& cand, uint32_t depth) {
        if (depth >= target) return true;
        if (cand.empty()) return false;
        if (++expanded > budget) throw BudgetExceeded("clique search budget exhausted");
        if (depth + cand.size() < target) return false;
        if (depth + color_bound(cand) < target) return false;
        // branch on the vertex of max candidate-degree (pivot-ish ordering)
        while (!cand.empty()) {
            if (depth + cand.size() < target) return false;
            Vertex v = cand.back();
            cand.pop_back();
            std::vector<Vertex> next;
            next.reserve(cand.size());
            for (Vertex u : cand)
                if (g.adjacent(u, v)) next.push_back(u);
            if (expand(next, depth + 1)) return true;
        }
        return false;
    }
};

} // namespace

bool has_clique_of_size(const Graph& g, uint32_t s, uint64_t node_budget) {
    if (s == 0) return true;
    if (s == 1) return g.n() > 0;
    CliqueSearch search{g, s, node_budget};
    std::vector<Vertex> all(g.n());
    for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
    // order by degree so high-degree vertices are branched on first
    std::sort(all.begin(), all.end(),
              [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    return search.expand(all, 0);
}

} // namespace streamchroma
