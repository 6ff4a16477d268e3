#include "sboxkit/sbox.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sboxkit {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::parse_error: return "parse_error";
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::not_bijective: return "not_bijective";
        case ErrorCode::unsupported_shape: return "unsupported_shape";
        case ErrorCode::not_found: return "not_found";
        case ErrorCode::capacity_exceeded: return "capacity_exceeded";
    }
    return "unknown";
}

SBox::SBox(unsigned n, unsigned m, std::vector<std::uint32_t> table)
    : n_(n), m_(m), table_(std::move(table)) {
    if (n < 1 || n > kMaxBits) {
        throw Error(ErrorCode::invalid_argument, "n must be in [1, 16], got " + std::to_string(n));
    }
    if (m < 1 || m > kMaxBits) {
        throw Error(ErrorCode::invalid_argument, "m must be in [1, 16], got " + std::to_string(m));
    }
    if (table_.size() != (std::size_t{1} << n)) {
        throw Error(ErrorCode::invalid_argument, "table must have 2^" + std::to_string(n) + " = " +
                                                     std::to_string(std::size_t{1} << n) +
                                                     " entries, got " + std::to_string(table_.size()));
    }
    const std::uint64_t limit = std::uint64_t{1} << m;
    for (std::size_t x = 0; x < table_.size(); ++x) {
        if (table_[x] >= limit) {
            throw Error(ErrorCode::invalid_argument, "entry " + std::to_string(x) + " = " +
                                                         std::to_string(table_[x]) + " does not fit in " +
                                                         std::to_string(m) + " bits");
        }
    }
}

SBox SBox::identity(unsigned n) {
    if (n < 1 || n > kMaxBits) {
        throw Error(ErrorCode::invalid_argument, "n must be in [1, 16], got " + std::to_string(n));
    }
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    std::iota(t.begin(), t.end(), 0u);
    return SBox(n, n, std::move(t));
}

BooleanFunction::BooleanFunction(unsigned n, std::vector<std::uint8_t> truth_table)
    : n_(n), bits_(std::move(truth_table)) {
    if (n > kMaxBits) {
        throw Error(ErrorCode::invalid_argument, "n must be at most 16");
    }
    if (bits_.size() != (std::size_t{1} << n)) {
        throw Error(ErrorCode::invalid_argument, "truth table must have 2^n entries");
    }
    if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
        throw Error(ErrorCode::invalid_argument, "truth table entries must be 0 or 1");
    }
}

namespace {

bool is_separator(char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';';
}

std::uint64_t parse_token(std::string_view tok, std::size_t index) {
    int base = 10;
    std::string_view digits = tok;
    if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
        base = 16;
        digits.remove_prefix(2);
    }
    std::uint64_t value = 0;
    const auto* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, value, base);
    if (ec != std::errc{} || ptr != end || digits.empty()) {
        throw Error(ErrorCode::parse_error,
                    "entry " + std::to_string(index) + ": invalid integer '" + std::string(tok) + "'");
    }
    return value;
}

}  // namespace

SBox parse_sbox(std::string_view text, std::optional<unsigned> n, std::optional<unsigned> m) {
    std::vector<std::uint32_t> entries;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '#') {
            while (pos < text.size() && text[pos] != '\n') ++pos;
            continue;
        }
        if (is_separator(c)) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !is_separator(text[end]) && text[end] != '#') ++end;
        const std::uint64_t v = parse_token(text.substr(pos, end - pos), entries.size());
        if (v > 0xffffffffu) {
            throw Error(ErrorCode::parse_error, "entry " + std::to_string(entries.size()) + " exceeds 32 bits");
        }
        entries.push_back(static_cast<std::uint32_t>(v));
        pos = end;
    }
    if (entries.empty()) {
        throw Error(ErrorCode::parse_error, "no entries found");
    }

    unsigned width = 0;
    if (n) {
        width = *n;
        if (width < 1 || width > kMaxBits || entries.size() != (std::size_t{1} << width)) {
            throw Error(ErrorCode::parse_error, "expected 2^" + std::to_string(width) + " entries, got " +
                                                    std::to_string(entries.size()));
        }
    } else {
        if (!std::has_single_bit(entries.size()) || entries.size() < 2) {
            throw Error(ErrorCode::parse_error, "length must be a power of two (got " +
                                                    std::to_string(entries.size()) + " entries)");
        }
        width = static_cast<unsigned>(std::countr_zero(entries.size()));
        if (width > kMaxBits) {
            throw Error(ErrorCode::parse_error, "table larger than 2^16 entries");
        }
    }

    unsigned out_width = width;
    if (m) {
        out_width = *m;
    } else {
        const std::uint32_t max_entry = *std::max_element(entries.begin(), entries.end());
        out_width = std::max(width, static_cast<unsigned>(std::bit_width(max_entry)));
    }
    return SBox(width, out_width, std::move(entries));
}

SBox load_sbox_file(const std::string& path, std::optional<unsigned> n, std::optional<unsigned> m) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sbox(buf.str(), n, m);
}

std::string format_sbox(const SBox& s) {
    const unsigned digits = (s.m() + 3) / 4;
    std::string out;
    char cell[16];
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::snprintf(cell, sizeof cell, "0x%0*x", static_cast<int>(digits), s[x]);
        out += cell;
        if (x + 1 == s.size()) {
            out += '\n';
        } else if (x % 16 == 15) {
            out += ",\n";
        } else {
            out += ", ";
        }
    }
    return out;
}

}  // namespace sboxkit
