#pragma once

#include "streamchroma/field.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace streamchroma {

/// One entry of a decoded sparse vector: (0-based coordinate, field coefficient).
struct SparseEntry {
    uint64_t coord;
    uint64_t coeff;

    bool operator==(const SparseEntry&) const = default;
};

using SparseVector = std::vector<SparseEntry>; // sorted by coord, no zero coeffs

/// Syndrome sketch against the 2k x n Vandermonde matrix over F_p.
/// Row i holds sum_j x_j * (j+1)^i; coordinates are shifted to evaluation
/// points 1..n so that coordinate 0 is representable.
class VandermondeSketch {
public:
    VandermondeSketch() = default;
    VandermondeSketch(FieldParams params, uint32_t k)
        : params_(params), k_(k), rows_(2 * static_cast<size_t>(k), 0) {}

    uint32_t k() const { return k_; }
    const FieldParams& params() const { return params_; }
    const std::vector<uint64_t>& rows() const { return rows_; }
    std::vector<uint64_t>& rows() { return rows_; }

    /// Add coeff at coordinate j. Commutative and associative across calls.
    void add(uint64_t j, uint64_t coeff);

    /// Row-wise field addition of another sketch over the same parameters.
    void merge(const VandermondeSketch& other);

    bool is_zero() const;

private:
    FieldParams params_;
    uint32_t k_ = 0;
    std::vector<uint64_t> rows_;
};

/// Syndromes of a given sparse vector (the encode direction, used by tests
/// and by decode verification).
std::vector<uint64_t> encode_syndromes(const FieldParams& params, uint32_t k,
                                       const SparseVector& x);

/// Recover the accumulated vector if it is k-sparse.
///
/// Syndrome decoding in the Reed-Solomon style: Berlekamp-Massey for the
/// locator polynomial, root scan over the evaluation points 1..n, then the
/// k x k transposed-Vandermonde solve on the located support. Returns nullopt
/// on any inconsistency; a candidate that does come back may still be wrong
/// when the accumulation was not k-sparse, so callers must fingerprint-check.
std::optional<SparseVector> decode_sparse(const VandermondeSketch& s);
std::optional<SparseVector> decode_syndromes(const FieldParams& params, uint32_t k,
                                             const std::vector<uint64_t>& syndromes);

/// Random-matrix fingerprint with t rows. Entries of the matrix are never
/// stored; they are regenerated from (matrix_seed, row, col) on demand, which
/// keeps verification O(t * support) and storage O(t).
class FingerprintSketch {
public:
    FingerprintSketch() = default;
    FingerprintSketch(FieldParams params, uint32_t t, uint64_t matrix_seed)
        : params_(params), matrix_seed_(matrix_seed), rows_(t, 0) {}

    uint32_t t() const { return static_cast<uint32_t>(rows_.size()); }
    uint64_t matrix_seed() const { return matrix_seed_; }
    const FieldParams& params() const { return params_; }
    const std::vector<uint64_t>& rows() const { return rows_; }
    std::vector<uint64_t>& rows() { return rows_; }

    /// Matrix entry Phi^R[row][col], regenerated on demand.
    uint64_t entry(uint32_t row, uint64_t col) const;

    void add(uint64_t j, uint64_t coeff);
    void merge(const FingerprintSketch& other);

    /// True iff Phi^R * candidate equals the stored rows.
    bool verify(const SparseVector& candidate) const;

    /// Rows of Phi^R * x for an explicit sparse vector.
    std::vector<uint64_t> apply(const SparseVector& x) const;

private:
    FieldParams params_;
    uint64_t matrix_seed_ = 0;
    std::vector<uint64_t> rows_;
};

/// Little-endian serialization with a (p, k, t, matrix_seed) header, for
/// checkpointing a (Vandermonde, fingerprint) pair.
std::vector<uint8_t> serialize_sketch_pair(const VandermondeSketch& v,
                                           const FingerprintSketch& f);
std::pair<VandermondeSketch, FingerprintSketch>
deserialize_sketch_pair(const uint8_t* data, size_t size);

} // namespace streamchroma
