#include "streamchroma/palette.hpp"

#include "streamchroma/errors.hpp"
#include "streamchroma/rng.hpp"

#include <algorithm>
#include <cmath>

namespace streamchroma {

bool PaletteLists::lists_intersect(Vertex u, Vertex v) const {
    const auto& a = merged[u];
    const auto& b = merged[v];
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return false;
}

bool PaletteLists::in_union(Vertex v, uint32_t color) const {
    const auto& a = merged[v];
    return std::binary_search(a.begin(), a.end(), color);
}

const std::vector<uint32_t>& PaletteLists::list(int index, Vertex v) const {
    switch (index) {
        case 3: return l3[v];
        case 4: return l4[v];
        case 5: return l5[v];
        case 6: return l6[v];
        default: throw Error("palette list index out of range");
    }
}

size_t PaletteLists::bytes() const {
    size_t words = l2.size();
    for (const auto* fam : {&l3, &l4, &l5, &l6})
        for (const auto& lst : *fam) words += lst.size();
    return words * sizeof(uint32_t);
}

namespace {

// Bernoulli process over colors 1..delta-1 via geometric skips; identical in
// distribution to a per-color coin but O(expected hits) time.
std::vector<uint32_t> bernoulli_subset(uint32_t delta, double rate, Rng& rng) {
    std::vector<uint32_t> out;
    if (delta < 2) return out;
    uint32_t num_colors = delta - 1;
    if (rate >= 1.0) {
        out.resize(num_colors);
        for (uint32_t c = 0; c < num_colors; ++c) out[c] = c + 1;
        return out;
    }
    if (rate <= 0.0) return out;
    if (rate > 0.3) {
        for (uint32_t c = 1; c <= num_colors; ++c)
            if (rng.bernoulli(rate)) out.push_back(c);
        return out;
    }
    double log1m = std::log1p(-rate);
    uint64_t pos = 0;
    for (;;) {
        double u = rng.unit_open();
        uint64_t skip = static_cast<uint64_t>(std::floor(std::log(u) / log1m));
        pos += skip + 1;
        if (pos > num_colors) break;
        out.push_back(static_cast<uint32_t>(pos));
    }
    return out;
}

} // namespace

PaletteLists sample_palettes(Vertex n, const EffectiveParams& ep) {
    if (ep.delta < 2) throw DegenerateRates("palette sampling needs delta >= 2");
    if (ep.mode == Mode::Paper && ep.rate_l6 >= 1.0)
        throw DegenerateRates("rho^3 >= delta in paper mode; use the exact fallback");

    PaletteLists p;
    p.delta = ep.delta;
    p.l2.resize(n);
    p.l3.resize(n);
    p.l4.resize(n);
    p.l5.resize(n);
    p.l6.resize(n);
    p.merged.resize(n);

    uint32_t num_colors = ep.delta - 1;
    for (Vertex v = 0; v < n; ++v) {
        Rng r2(derive_seed(ep.seed, rng_tag::kPaletteL2, v));
        p.l2[v] = 1 + static_cast<uint32_t>(r2.below(num_colors));
        Rng r3(derive_seed(ep.seed, rng_tag::kPaletteL3, v));
        p.l3[v] = bernoulli_subset(ep.delta, ep.rate_l3, r3);
        Rng r4(derive_seed(ep.seed, rng_tag::kPaletteL4, v));
        p.l4[v] = bernoulli_subset(ep.delta, ep.rate_l4, r4);
        Rng r5(derive_seed(ep.seed, rng_tag::kPaletteL5, v));
        p.l5[v] = bernoulli_subset(ep.delta, ep.rate_l5, r5);
        Rng r6(derive_seed(ep.seed, rng_tag::kPaletteL6, v));
        p.l6[v] = bernoulli_subset(ep.delta, ep.rate_l6, r6);

        auto& u = p.merged[v];
        u.push_back(p.l2[v]);
        for (const auto* lst : {&p.l3[v], &p.l4[v], &p.l5[v], &p.l6[v]})
            u.insert(u.end(), lst->begin(), lst->end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
    }
    return p;
}

} // namespace streamchroma
