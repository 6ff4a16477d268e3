#include "sboxkit/service/json_codec.hpp"

#include <bit>
#include <limits>

namespace sboxkit::service {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::invalid_argument, "field '" + field + "' " + what);
}

std::uint64_t get_unsigned(const json& body, const char* field, std::uint64_t max) {
    const json& v = body.at(field);
    if (!v.is_number_unsigned()) {
        bad_field(field, "must be a nonnegative integer");
    }
    const auto value = v.get<std::uint64_t>();
    if (value > max) bad_field(field, "must be at most " + std::to_string(max));
    return value;
}

std::int64_t get_signed(const json& body, const char* field) {
    const json& v = body.at(field);
    if (!v.is_number_integer()) bad_field(field, "must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        bad_field(field, "is out of range");
    }
    return v.get<std::int64_t>();
}

}  // namespace

SBox sbox_from_json(const json& body) {
    if (!body.is_object()) {
        throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
    }
    if (!body.contains("sbox") || !body["sbox"].is_array()) {
        bad_field("sbox", "must be an array of integers");
    }
    const json& arr = body["sbox"];
    std::vector<std::uint32_t> table;
    table.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const json& v = arr[k];
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffu) {
            bad_field("sbox", "entry " + std::to_string(k) + " is not a nonnegative 32-bit integer");
        }
        table.push_back(v.get<std::uint32_t>());
    }

    unsigned n = 0;
    if (body.contains("n")) {
        n = static_cast<unsigned>(get_unsigned(body, "n", kMaxBits));
    } else {
        if (!std::has_single_bit(table.size()) || table.size() < 2) {
            bad_field("sbox", "length must be a power of two");
        }
        n = static_cast<unsigned>(std::countr_zero(table.size()));
    }
    unsigned m = n;
    if (body.contains("m")) {
        m = static_cast<unsigned>(get_unsigned(body, "m", kMaxBits));
    }
    return SBox(n, m, std::move(table));
}

json sbox_to_json(const SBox& s) {
    return json{{"n", s.n()}, {"m", s.m()}, {"sbox", std::vector<std::uint32_t>(s.table().begin(), s.table().end())}};
}

json report_to_json(const PropertyReport& r) {
    json out{
        {"n", r.n},
        {"m", r.m},
        {"bijective", r.bijective},
        {"nl", r.nl},
        {"du", r.du ? json(*r.du) : json(nullptr)},
        {"ccv", r.ccv},
        {"mto", r.mto ? json(*r.mto) : json(nullptr)},
        {"rto", r.rto ? json(*r.rto) : json(nullptr)},
        {"wcf", r.wcf},
        {"wcf_params", {{"x", r.wcf_params.x}, {"r", r.wcf_params.r}}},
        {"hw_signature", r.hw_signature},
        {"errors", json::object()},
    };
    for (const auto& [field, reason] : r.errors) out["errors"][field] = reason;
    return out;
}

json classical_to_json(const ClassicalEntry& e) {
    json out = sbox_to_json(e.table);
    out["name"] = e.name;
    out["nl"] = e.ref_nl;
    out["du"] = e.ref_du;
    out["citation"] = e.citation;
    return out;
}

SearchConfig search_config_from_json(const json& body) {
    if (!body.is_object()) {
        throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
    }
    SearchConfig c;
    if (body.contains("n")) c.n = static_cast<unsigned>(get_unsigned(body, "n", 64));
    if (body.contains("target_nl")) {
        const std::int64_t t = get_signed(body, "target_nl");
        if (t < 0 || t > std::numeric_limits<int>::max()) bad_field("target_nl", "is out of range");
        c.target_nl = static_cast<int>(t);
    }
    if (body.contains("max_iterations")) {
        c.max_iterations = get_unsigned(body, "max_iterations", std::numeric_limits<std::uint64_t>::max());
    }
    if (body.contains("restarts")) c.restarts = static_cast<unsigned>(get_unsigned(body, "restarts", 1'000'000));
    if (body.contains("wcf_x")) c.wcf_x = get_signed(body, "wcf_x");
    if (body.contains("wcf_r")) c.wcf_r = static_cast<unsigned>(get_unsigned(body, "wcf_r", 64));
    if (body.contains("seed")) c.seed = get_unsigned(body, "seed", std::numeric_limits<std::uint64_t>::max());
    if (body.contains("nl_cadence")) c.nl_cadence = static_cast<unsigned>(get_unsigned(body, "nl_cadence", 1'000'000));
    validate(c);
    return c;
}

json search_config_to_json(const SearchConfig& c) {
    return json{{"n", c.n},
                {"target_nl", c.target_nl},
                {"max_iterations", c.max_iterations},
                {"restarts", c.restarts},
                {"wcf_x", c.wcf_x},
                {"wcf_r", c.wcf_r},
                {"seed", c.seed},
                {"nl_cadence", c.nl_cadence}};
}

}  // namespace sboxkit::service
