#pragma once

#include <cstdint>
#include <random>

namespace sboxkit {

/// Seeded mt19937_64 with a rejection-sampled bounded draw; sequences are
/// identical on every standard library.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t v = engine_();
            if (v >= limit) return v % bound;
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Seed from the OS entropy source, for requests that do not supply one.
inline std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace sboxkit
