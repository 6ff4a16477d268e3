#include "sboxkit/dataset.hpp"

#include <zlib.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sboxkit/analysis.hpp"

#ifndef SBOXKIT_DEFAULT_DATA_DIR
#define SBOXKIT_DEFAULT_DATA_DIR "data"
#endif

namespace sboxkit {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::parse_error, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string crc32_hex(const std::string& bytes) {
    const uLong crc = ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
    char out[9];
    std::snprintf(out, sizeof out, "%08lx", static_cast<unsigned long>(crc));
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

}  // namespace

Dataset Dataset::load(const std::filesystem::path& dir) {
    const std::filesystem::path index_path = dir / "index.json";
    nlohmann::json index;
    try {
        index = nlohmann::json::parse(read_file(index_path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, index_path.string() + ": " + e.what());
    }

    Dataset ds;
    try {
        for (const auto& item : index.at("entries")) {
            const auto file = item.at("file").get<std::string>();
            const std::string body = read_file(dir / file);
            const auto expected_crc = item.at("crc32").get<std::string>();
            if (crc32_hex(body) != expected_crc) {
                throw Error(ErrorCode::parse_error, file + ": checksum mismatch (expected " + expected_crc +
                                                        ", got " + crc32_hex(body) + ")");
            }
            const auto n = item.at("n").get<unsigned>();
            const auto m = item.at("m").get<unsigned>();
            SBox table = parse_sbox(body, n, m);
            if (!is_bijective(table)) {
                throw Error(ErrorCode::parse_error, file + ": table is not a permutation");
            }
            ds.entries_.push_back(ClassicalEntry{item.at("name").get<std::string>(), std::move(table),
                                                 item.at("ref_nl").get<int>(), item.at("ref_du").get<int>(),
                                                 item.at("citation").get<std::string>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, index_path.string() + ": " + e.what());
    }
    return ds;
}

std::filesystem::path Dataset::default_dir() {
    if (const char* env = std::getenv("SBOXKIT_DATA_DIR"); env && *env) {
        return std::filesystem::path(env) / "classical";
    }
    return std::filesystem::path(SBOXKIT_DEFAULT_DATA_DIR) / "classical";
}

const Dataset& Dataset::builtin() {
    static const Dataset instance = load(default_dir());
    return instance;
}

const ClassicalEntry& Dataset::find(std::string_view name) const {
    for (const auto& e : entries_) {
        if (iequals(e.name, name)) return e;
    }
    throw Error(ErrorCode::not_found, "no classical S-box named '" + std::string(name) + "'");
}

}  // namespace sboxkit
