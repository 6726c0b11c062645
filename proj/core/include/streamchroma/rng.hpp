#pragma once

#include <cstdint>
#include <cmath>

namespace streamchroma {

// All randomness in the library flows from one master seed through
// derive_seed(master, tag, a, b). Every subsystem draws from its own derived
// stream, so results do not depend on the order in which edges arrive or
// subsystems run.

inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline uint64_t derive_seed(uint64_t master, uint64_t tag, uint64_t a = 0, uint64_t b = 0) {
    uint64_t x = master + 0x9e3779b97f4a7c15ULL * (tag + 1);
    x = mix64(x);
    x += 0x9e3779b97f4a7c15ULL * (a + 1);
    x = mix64(x);
    x += 0x9e3779b97f4a7c15ULL * (b + 1);
    return mix64(x);
}

// Subsystem tags. Fixed values: they are part of the reproducibility contract.
namespace rng_tag {
constexpr uint64_t kPaletteL2 = 1;
constexpr uint64_t kPaletteL3 = 2;
constexpr uint64_t kPaletteL4 = 3;
constexpr uint64_t kPaletteL5 = 4;
constexpr uint64_t kPaletteL6 = 5;
constexpr uint64_t kLevelSample = 6;
constexpr uint64_t kFingerprintMatrix = 7;
constexpr uint64_t kAnchorSample = 8;
constexpr uint64_t kSlackActivation = 9;
constexpr uint64_t kReedActivation = 10;
constexpr uint64_t kReedDownsample = 11;
constexpr uint64_t kZSelection = 12;
constexpr uint64_t kGenerator = 13;
constexpr uint64_t kTrial = 14;
constexpr uint64_t kGadget = 15;
} // namespace rng_tag

/// splitmix64 generator. Cheap, seedable, platform-independent.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform in [0, bound). bound must be positive.
    uint64_t below(uint64_t bound) {
        // rejection sampling to avoid modulo bias
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Bernoulli trial. Integer threshold compare keeps it platform-exact.
    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return next() < static_cast<uint64_t>(p * 18446744073709551616.0);
    }

    /// Uniform in (0, 1].
    double unit_open() {
        return (static_cast<double>(next() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }

private:
    uint64_t state_;
};

/// One stateless Bernoulli draw keyed by (master, tag, a, b).
inline bool keyed_bernoulli(uint64_t master, uint64_t tag, uint64_t a, uint64_t b, double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return mix64(derive_seed(master, tag, a, b)) <
           static_cast<uint64_t>(p * 18446744073709551616.0);
}

} // namespace streamchroma
