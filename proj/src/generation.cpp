#include "sboxkit/generation.hpp"

#include <numeric>
#include <utility>
#include <vector>

namespace sboxkit {

SBox random_bijective(unsigned n, RandomSource& rng) {
    if (n < 1 || n > kMaxBits) {
        throw Error(ErrorCode::invalid_argument, "n must be in [1, 16], got " + std::to_string(n));
    }
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    std::iota(t.begin(), t.end(), 0u);
    for (std::size_t i = t.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(t[i], t[j]);
    }
    return SBox(n, n, std::move(t));
}

SBox swap(const SBox& s, std::size_t i, std::size_t j) {
    if (i >= s.size() || j >= s.size()) {
        throw Error(ErrorCode::invalid_argument, "swap index out of range");
    }
    std::vector<std::uint32_t> t(s.table().begin(), s.table().end());
    std::swap(t[i], t[j]);
    return SBox(s.n(), s.m(), std::move(t));
}

SBox xor_translate(const SBox& s, std::uint32_t c) {
    if (c >= s.size()) {
        throw Error(ErrorCode::invalid_argument, "translation mask must be below 2^n");
    }
    std::vector<std::uint32_t> t(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) t[x] = s[x ^ c];
    return SBox(s.n(), s.m(), std::move(t));
}

SBox xor_output(const SBox& s, std::uint32_t d) {
    if (d >= (std::uint32_t{1} << s.m())) {
        throw Error(ErrorCode::invalid_argument, "output mask must be below 2^m");
    }
    std::vector<std::uint32_t> t(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) t[x] = s[x] ^ d;
    return SBox(s.n(), s.m(), std::move(t));
}

SBox rotate_table(const SBox& s, std::uint32_t k) {
    if (k >= s.size()) {
        throw Error(ErrorCode::invalid_argument, "rotation must be below 2^n");
    }
    const std::size_t mask = s.size() - 1;
    std::vector<std::uint32_t> t(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) t[x] = s[(x + k) & mask];
    return SBox(s.n(), s.m(), std::move(t));
}

}  // namespace sboxkit
