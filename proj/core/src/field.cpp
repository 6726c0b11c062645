#include "streamchroma/field.hpp"

#include "streamchroma/errors.hpp"

#include <string>

namespace streamchroma {

uint64_t Fp::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

namespace {

uint64_t mulmod_generic(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_generic(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_generic(r, a, m);
        a = mulmod_generic(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(uint64_t x) {
    if (x < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (x % q == 0) return x == q;
    }
    uint64_t d = x - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these bases decide primality exactly below 2^64
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t v = powmod_generic(a, d, x);
        if (v == 1 || v == x - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            v = mulmod_generic(v, v, x);
            if (v == x - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldParams choose_prime(uint64_t n, uint32_t c) {
    if (n < 2 || c < 1) throw Overflow("choose_prime: need n >= 2 and c >= 1");
    unsigned __int128 target = 1;
    for (uint32_t i = 0; i < c; ++i) {
        target *= n;
        if (target > kMaxModulus)
            throw Overflow("choose_prime: n^" + std::to_string(c) + " exceeds the 2^62 modulus cap");
    }
    uint64_t candidate = static_cast<uint64_t>(target);
    while (!is_prime_u64(candidate)) ++candidate;
    return FieldParams{candidate, n};
}

} // namespace streamchroma
