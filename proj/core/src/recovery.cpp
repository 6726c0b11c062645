#include "streamchroma/recovery.hpp"

#include "streamchroma/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace streamchroma {

int64_t SketchBank::index_of(Vertex v) const {
    auto it = std::lower_bound(sampled.begin(), sampled.end(), v);
    if (it == sampled.end() || *it != v) return -1;
    return it - sampled.begin();
}

size_t SketchBank::field_elements() const {
    size_t t = fp.empty() ? 0 : fp.front().t();
    return sampled.size() * (2 * s_i + t);
}

namespace {

// syndromes of the clique indicator 1_C at one level
struct CliqueSyndromes {
    std::vector<uint64_t> vand;
    std::vector<uint64_t> fp;
};

CliqueSyndromes clique_syndromes(const SketchBank& bank, const std::vector<Vertex>& members,
                                 const FieldParams& params, uint32_t t) {
    CliqueSyndromes out;
    VandermondeSketch vs(params, static_cast<uint32_t>(bank.s_i));
    FingerprintSketch fs(params, t, bank.matrix_seed);
    for (Vertex v : members) {
        vs.add(v, 1);
        fs.add(v, 1);
    }
    out.vand = vs.rows();
    out.fp = fs.rows();
    return out;
}

} // namespace

RecoveryResult recover_dense_neighborhoods(const std::vector<SketchBank>& banks,
                                           const AlmostCliqueDecomposition& acd,
                                           const EffectiveParams& ep) {
    RecoveryResult out;
    FieldParams params{ep.prime, ep.n};
    Fp f(ep.prime);
    uint32_t t = ep.fingerprint_rows;

    for (uint32_t ci = 0; ci < acd.cliques.size(); ++ci) {
        const auto& members = acd.cliques[ci];
        std::set<Vertex> member_set(members.begin(), members.end());

        std::vector<std::optional<CliqueSyndromes>> synd(banks.size());
        auto level_syndromes = [&](size_t li) -> const CliqueSyndromes& {
            if (!synd[li]) synd[li] = clique_syndromes(banks[li], members, params, t);
            return *synd[li];
        };

        for (Vertex v : members) {
            for (size_t li = 0; li < banks.size(); ++li) {
                const SketchBank& bank = banks[li];
                int64_t idx = bank.index_of(v);
                if (idx < 0) continue;
                const CliqueSyndromes& cs = level_syndromes(li);

                // x(v) = Phi * 1_C - y(v): +1 on A(v), -1 on E(v)
                const auto& y = bank.vand[idx].rows();
                std::vector<uint64_t> diff(y.size());
                for (size_t r = 0; r < y.size(); ++r) diff[r] = f.sub(cs.vand[r], y[r]);

                auto cand = decode_syndromes(params, static_cast<uint32_t>(bank.s_i), diff);
                if (!cand) continue;

                RecoveredNeighborhood rec;
                rec.level = bank.level;
                bool shape_ok = true;
                for (const auto& entry : *cand) {
                    Vertex u = static_cast<Vertex>(entry.coord);
                    if (entry.coeff == 1) {
                        if (u == v || !member_set.count(u)) { shape_ok = false; break; }
                        rec.anti.push_back(u);
                    } else if (entry.coeff == ep.prime - 1) {
                        if (member_set.count(u)) { shape_ok = false; break; }
                        rec.external.push_back(u);
                    } else {
                        shape_ok = false;
                        break;
                    }
                }
                if (!shape_ok) continue;

                // fingerprint gate: Phi^R 1_C - Phi^R x(v) must equal z(v)
                const auto& z = bank.fp[idx].rows();
                auto applied = bank.fp[idx].apply(*cand);
                bool match = true;
                for (size_t r = 0; r < z.size(); ++r)
                    if (f.sub(cs.fp[r], applied[r]) != z[r]) { match = false; break; }
                if (!match) continue;

                out.recovered.emplace(v, std::move(rec));
                break;
            }
        }

        // certified anti-edges inside this clique
        std::vector<Edge> anti;
        for (Vertex v : members) {
            auto it = out.recovered.find(v);
            if (it == out.recovered.end()) continue;
            for (Vertex u : it->second.anti) anti.push_back(canonical(v, u));
        }
        std::sort(anti.begin(), anti.end());
        anti.erase(std::unique(anti.begin(), anti.end()), anti.end());

        uint32_t unrecovered = 0;
        for (Vertex v : members)
            if (!out.recovered.count(v)) ++unrecovered;
        // with at most one unrecovered member, every anti-edge of G[C] still
        // has a recovered endpoint, so the census below is exact
        bool census_complete = unrecovered <= 1;

        // helper assembly: prefer the 2-anti-matching, fall back to a 3-IS
        auto known = [&](Vertex v) { return out.recovered.count(v) > 0; };
        std::optional<SolitaryHelper> helper;
        size_t scan_cap = std::min<size_t>(anti.size(), 1000);
        for (size_t i = 0; i < scan_cap && !helper; ++i) {
            if (!known(anti[i].u) && !known(anti[i].v)) continue;
            for (size_t j = i + 1; j < scan_cap; ++j) {
                if (!known(anti[j].u) && !known(anti[j].v)) continue;
                Vertex a = anti[i].u, b = anti[i].v, c = anti[j].u, d = anti[j].v;
                if (a == c || a == d || b == c || b == d) continue;
                SolitaryHelper h;
                h.kind = SolitaryHelper::Kind::AntiMatching;
                h.known[0] = known(a) ? a : b;
                h.partners[0] = known(a) ? b : a;
                h.known[1] = known(c) ? c : d;
                h.partners[1] = known(c) ? d : c;
                helper = h;
                break;
            }
        }
        if (!helper) {
            // anti-triangle with at least two recovered corners
            std::map<Vertex, std::vector<Vertex>> anti_adj;
            for (const Edge& e : anti) {
                anti_adj[e.u].push_back(e.v);
                anti_adj[e.v].push_back(e.u);
            }
            for (const Edge& e : anti) {
                const auto& au = anti_adj[e.u];
                for (Vertex w : anti_adj[e.v]) {
                    if (w == e.u) continue;
                    if (std::find(au.begin(), au.end(), w) == au.end()) continue;
                    // {e.u, e.v, w} pairwise anti; need two known corners
                    std::vector<Vertex> tri{e.u, e.v, w};
                    std::sort(tri.begin(), tri.end());
                    std::vector<Vertex> rec_corners, other;
                    for (Vertex x : tri) (known(x) ? rec_corners : other).push_back(x);
                    if (rec_corners.size() < 2) continue;
                    SolitaryHelper h;
                    h.kind = SolitaryHelper::Kind::IndependentSet;
                    h.known[0] = rec_corners[0];
                    h.known[1] = rec_corners[1];
                    h.partners[0] = other.empty() ? rec_corners[2] : other[0];
                    helper = h;
                    break;
                }
                if (helper) break;
            }
        }
        if (helper) out.helpers.emplace(ci, *helper);
        out.anti_edges.emplace(ci, std::move(anti));

        // non-small cliques with neither full recovery nor a helper nor a
        // holey certificate cannot certify their coloring route
        SizeClass sc = classify_size(members.size(), ep.delta, ep.rho);
        if (sc != SizeClass::Small && !census_complete && !helper &&
            out.anti_edges[ci].size() < ep.holey_threshold)
            out.incomplete.push_back(ci);
    }
    return out;
}

} // namespace streamchroma
