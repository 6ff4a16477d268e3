#pragma once

#include <cstdint>

#include "sboxkit/random.hpp"
#include "sboxkit/sbox.hpp"

namespace sboxkit {

/// Uniform random permutation of {0, ..., 2^n - 1} (Fisher-Yates), n in [1, 16].
SBox random_bijective(unsigned n, RandomSource& rng);

/// Copy of s with entries i and j exchanged.
SBox swap(const SBox& s, std::size_t i, std::size_t j);

/// x -> F(x xor c).
SBox xor_translate(const SBox& s, std::uint32_t c);

/// x -> F(x) xor d.
SBox xor_output(const SBox& s, std::uint32_t d);

/// x -> F((x + k) mod 2^n), a cyclic shift of the table.
SBox rotate_table(const SBox& s, std::uint32_t k);

}  // namespace sboxkit
