#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sboxkit/sbox.hpp"

namespace sboxkit {

struct ClassicalEntry {
    std::string name;
    SBox table;
    int ref_nl;
    int ref_du;
    std::string citation;
};

/// The bundled classical S-boxes: one text file per table plus index.json
/// with reference values and a CRC-32 of each file.
class Dataset {
public:
    /// Throws parse_error on a missing file, a checksum mismatch or a table
    /// that is not a permutation of the declared size.
    static Dataset load(const std::filesystem::path& dir);

    /// Loaded once from $SBOXKIT_DATA_DIR/classical, falling back to the
    /// directory configured at build time.
    static const Dataset& builtin();

    static std::filesystem::path default_dir();

    const std::vector<ClassicalEntry>& entries() const noexcept { return entries_; }

    /// Case-insensitive; throws not_found.
    const ClassicalEntry& find(std::string_view name) const;

private:
    std::vector<ClassicalEntry> entries_;
};

inline const std::vector<ClassicalEntry>& list_classical() { return Dataset::builtin().entries(); }
inline const ClassicalEntry& get_classical(std::string_view name) { return Dataset::builtin().find(name); }

}  // namespace sboxkit
