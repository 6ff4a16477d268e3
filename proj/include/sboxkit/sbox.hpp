#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sboxkit/error.hpp"

namespace sboxkit {

/// Largest supported input width. Tables beyond 2^16 entries are out of
/// reach for the quadratic metrics anyway.
inline constexpr unsigned kMaxBits = 16;

/// Lookup table F: {0,1}^n -> {0,1}^m. Immutable after construction; every
/// constructor validates length and range.
class SBox {
public:
    SBox(unsigned n, unsigned m, std::vector<std::uint32_t> table);

    static SBox identity(unsigned n);

    unsigned n() const noexcept { return n_; }
    unsigned m() const noexcept { return m_; }
    std::size_t size() const noexcept { return table_.size(); }
    std::uint32_t operator[](std::size_t x) const noexcept { return table_[x]; }
    std::span<const std::uint32_t> table() const noexcept { return table_; }

    friend bool operator==(const SBox&, const SBox&) = default;

private:
    unsigned n_;
    unsigned m_;
    std::vector<std::uint32_t> table_;
};

/// Truth table of a single-output function over n bits, one byte per entry.
class BooleanFunction {
public:
    BooleanFunction(unsigned n, std::vector<std::uint8_t> truth_table);

    unsigned n() const noexcept { return n_; }
    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t x) const noexcept { return bits_[x]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    unsigned n_;
    std::vector<std::uint8_t> bits_;
};

inline unsigned popcount(std::uint32_t v) noexcept { return static_cast<unsigned>(__builtin_popcount(v)); }
inline unsigned parity(std::uint32_t v) noexcept { return popcount(v) & 1u; }

/// Parses the S-box text format: integers separated by whitespace and/or
/// commas, decimal or 0x-prefixed hex, '#' starts a comment to end of line.
/// n is inferred from the entry count unless given; m defaults to n, widened
/// if an entry needs more bits.
SBox parse_sbox(std::string_view text, std::optional<unsigned> n = std::nullopt,
                std::optional<unsigned> m = std::nullopt);

SBox load_sbox_file(const std::string& path, std::optional<unsigned> n = std::nullopt,
                    std::optional<unsigned> m = std::nullopt);

/// Hex text, sixteen entries per line. parse_sbox(format_sbox(s)) == s.
std::string format_sbox(const SBox& s);

}  // namespace sboxkit
