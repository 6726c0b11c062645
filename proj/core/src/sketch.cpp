#include "streamchroma/sketch.hpp"

#include "streamchroma/errors.hpp"
#include "streamchroma/rng.hpp"

#include <algorithm>
#include <cstring>

namespace streamchroma {

void VandermondeSketch::add(uint64_t j, uint64_t coeff) {
    Fp f(params_.p);
    uint64_t base = (j + 1) % params_.p;
    uint64_t term = coeff % params_.p;
    for (auto& row : rows_) {
        row = f.add(row, term);
        term = f.mul(term, base);
    }
}

void VandermondeSketch::merge(const VandermondeSketch& other) {
    Fp f(params_.p);
    for (size_t i = 0; i < rows_.size(); ++i) rows_[i] = f.add(rows_[i], other.rows_[i]);
}

bool VandermondeSketch::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](uint64_t r) { return r == 0; });
}

std::vector<uint64_t> encode_syndromes(const FieldParams& params, uint32_t k,
                                       const SparseVector& x) {
    VandermondeSketch s(params, k);
    for (const auto& e : x) s.add(e.coord, e.coeff);
    return s.rows();
}

namespace {

// Minimal LFSR for the syndrome sequence (Berlekamp-Massey over F_p).
// Returns the connection polynomial c with c[0] = 1 such that
// s[i] = -sum_{j=1..L} c[j] * s[i-j] for all i >= L.
std::vector<uint64_t> berlekamp_massey(const Fp& f, const std::vector<uint64_t>& s) {
    std::vector<uint64_t> c{1}, b{1};
    uint64_t bd = 1; // discrepancy associated with b
    size_t L = 0, m = 1;
    for (size_t i = 0; i < s.size(); ++i) {
        uint64_t d = s[i];
        for (size_t j = 1; j <= L; ++j) d = f.add(d, f.mul(c[j], s[i - j]));
        if (d == 0) {
            ++m;
            continue;
        }
        uint64_t coef = f.mul(d, f.inv(bd));
        if (2 * L <= i) {
            std::vector<uint64_t> t = c;
            if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
            for (size_t j = 0; j < b.size(); ++j)
                c[j + m] = f.sub(c[j + m], f.mul(coef, b[j]));
            L = i + 1 - L;
            b = std::move(t);
            bd = d;
            m = 1;
        } else {
            if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
            for (size_t j = 0; j < b.size(); ++j)
                c[j + m] = f.sub(c[j + m], f.mul(coef, b[j]));
            ++m;
        }
    }
    c.resize(L + 1, 0);
    return c;
}

// Solve sum_a coeff[a] * root[a]^i = synd[i] for i = 0..L-1 by Gaussian
// elimination on the transposed Vandermonde system.
std::optional<std::vector<uint64_t>> solve_coefficients(const Fp& f,
                                                        const std::vector<uint64_t>& roots,
                                                        const std::vector<uint64_t>& synd) {
    size_t L = roots.size();
    std::vector<std::vector<uint64_t>> m(L, std::vector<uint64_t>(L + 1, 0));
    for (size_t i = 0; i < L; ++i) {
        for (size_t a = 0; a < L; ++a) m[i][a] = f.pow(roots[a], i);
        m[i][L] = synd[i];
    }
    for (size_t col = 0; col < L; ++col) {
        size_t piv = col;
        while (piv < L && m[piv][col] == 0) ++piv;
        if (piv == L) return std::nullopt;
        std::swap(m[col], m[piv]);
        uint64_t ipiv = f.inv(m[col][col]);
        for (size_t j = col; j <= L; ++j) m[col][j] = f.mul(m[col][j], ipiv);
        for (size_t r = 0; r < L; ++r) {
            if (r == col || m[r][col] == 0) continue;
            uint64_t factor = m[r][col];
            for (size_t j = col; j <= L; ++j)
                m[r][j] = f.sub(m[r][j], f.mul(factor, m[col][j]));
        }
    }
    std::vector<uint64_t> out(L);
    for (size_t a = 0; a < L; ++a) out[a] = m[a][L];
    return out;
}

} // namespace

std::optional<SparseVector> decode_syndromes(const FieldParams& params, uint32_t k,
                                             const std::vector<uint64_t>& syndromes) {
    Fp f(params.p);
    bool zero = std::all_of(syndromes.begin(), syndromes.end(),
                            [](uint64_t r) { return r == 0; });
    if (zero) return SparseVector{};

    std::vector<uint64_t> c = berlekamp_massey(f, syndromes);
    size_t L = c.size() - 1;
    if (L == 0 || L > k) return std::nullopt;

    // Reciprocal polynomial L(x) = x^L + c[1] x^(L-1) + ... + c[L] has the
    // locators (evaluation points j+1) as roots. Horner scan over 1..n.
    std::vector<uint64_t> roots;
    roots.reserve(L);
    for (uint64_t x = 1; x <= params.n; ++x) {
        uint64_t acc = 1;
        for (size_t j = 1; j <= L; ++j) acc = f.add(f.mul(acc, x), c[j]);
        if (acc == 0) {
            roots.push_back(x);
            if (roots.size() == L) break;
        }
    }
    if (roots.size() != L) return std::nullopt;

    auto coeffs = solve_coefficients(f, roots, syndromes);
    if (!coeffs) return std::nullopt;

    SparseVector out;
    out.reserve(L);
    for (size_t a = 0; a < L; ++a) {
        if ((*coeffs)[a] == 0) return std::nullopt; // locator without mass
        out.push_back({roots[a] - 1, (*coeffs)[a]});
    }
    std::sort(out.begin(), out.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.coord < b.coord; });

    // Re-encode against all 2k rows; cheap, and filters most dense inputs.
    if (encode_syndromes(params, k, out) != syndromes) return std::nullopt;
    return out;
}

std::optional<SparseVector> decode_sparse(const VandermondeSketch& s) {
    return decode_syndromes(s.params(), s.k(), s.rows());
}

uint64_t FingerprintSketch::entry(uint32_t row, uint64_t col) const {
    // rejection-sampled uniform value below p, keyed by (seed, row, col)
    Rng r(derive_seed(matrix_seed_, rng_tag::kFingerprintMatrix, row, col));
    uint64_t p = params_.p;
    uint64_t limit = p * (UINT64_MAX / p);
    for (;;) {
        uint64_t v = r.next();
        if (v < limit) return v % p;
    }
}

void FingerprintSketch::add(uint64_t j, uint64_t coeff) {
    Fp f(params_.p);
    uint64_t c = coeff % params_.p;
    for (uint32_t r = 0; r < rows_.size(); ++r)
        rows_[r] = f.add(rows_[r], f.mul(c, entry(r, j)));
}

void FingerprintSketch::merge(const FingerprintSketch& other) {
    Fp f(params_.p);
    for (size_t i = 0; i < rows_.size(); ++i) rows_[i] = f.add(rows_[i], other.rows_[i]);
}

std::vector<uint64_t> FingerprintSketch::apply(const SparseVector& x) const {
    Fp f(params_.p);
    std::vector<uint64_t> out(rows_.size(), 0);
    for (const auto& e : x) {
        uint64_t c = e.coeff % params_.p;
        for (uint32_t r = 0; r < rows_.size(); ++r)
            out[r] = f.add(out[r], f.mul(c, entry(r, e.coord)));
    }
    return out;
}

bool FingerprintSketch::verify(const SparseVector& candidate) const {
    return apply(candidate) == rows_;
}

namespace {

void put_u64(std::vector<uint8_t>& buf, uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t get_u64(const uint8_t* data, size_t& off) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data[off + i]) << (8 * i);
    off += 8;
    return v;
}

} // namespace

std::vector<uint8_t> serialize_sketch_pair(const VandermondeSketch& v,
                                           const FingerprintSketch& f) {
    std::vector<uint8_t> buf;
    buf.reserve(8 * (5 + v.rows().size() + f.rows().size()));
    put_u64(buf, v.params().p);
    put_u64(buf, v.params().n);
    put_u64(buf, v.k());
    put_u64(buf, f.t());
    put_u64(buf, f.matrix_seed());
    for (uint64_t r : v.rows()) put_u64(buf, r);
    for (uint64_t r : f.rows()) put_u64(buf, r);
    return buf;
}

std::pair<VandermondeSketch, FingerprintSketch>
deserialize_sketch_pair(const uint8_t* data, size_t size) {
    size_t off = 0;
    if (size < 40) throw Error("sketch checkpoint truncated");
    FieldParams params;
    params.p = get_u64(data, off);
    params.n = get_u64(data, off);
    uint64_t k = get_u64(data, off);
    uint64_t t = get_u64(data, off);
    uint64_t seed = get_u64(data, off);
    if (size != 40 + 8 * (2 * k + t)) throw Error("sketch checkpoint size mismatch");
    VandermondeSketch v(params, static_cast<uint32_t>(k));
    FingerprintSketch f(params, static_cast<uint32_t>(t), seed);
    for (auto& r : v.rows()) r = get_u64(data, off);
    for (auto& r : f.rows()) r = get_u64(data, off);
    return {std::move(v), std::move(f)};
}

} // namespace streamchroma
