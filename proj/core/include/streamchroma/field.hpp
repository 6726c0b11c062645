#pragma once

#include <cstdint>

namespace streamchroma {

/// Prime field parameters for the recovery sketches.
/// p is the smallest prime >= n^c; Bertrand keeps it below 2*n^c.
struct FieldParams {
    uint64_t p = 0;
    uint64_t n = 0;

    bool valid() const { return p >= 2 && p >= n; }
};

// Largest modulus for which 128-bit intermediate products stay exact.
constexpr uint64_t kMaxModulus = uint64_t(1) << 62;

/// Modular arithmetic over F_p for p < 2^62.
class Fp {
public:
    explicit Fp(uint64_t p) : p_(p) {}

    uint64_t p() const { return p_; }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const { return pow(a, p_ - 2); }

private:
    uint64_t p_;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t x);

/// Smallest prime >= n^c. Throws Overflow when n^c exceeds the modulus cap.
FieldParams choose_prime(uint64_t n, uint32_t c);

} // namespace streamchroma
