#pragma once

#include <json.hpp>

#include "sboxkit/analysis.hpp"
#include "sboxkit/dataset.hpp"
#include "sboxkit/search.hpp"

namespace sboxkit::service {

using json = nlohmann::json;

/// {"n", "m", "sbox"}: sbox is required, n and m are optional and checked
/// against the array when present. Throws sboxkit::Error.
SBox sbox_from_json(const json& body);
json sbox_to_json(const SBox& s);

json report_to_json(const PropertyReport& report);
json classical_to_json(const ClassicalEntry& entry);

/// Fields of SearchConfig by name; absent fields keep their defaults.
SearchConfig search_config_from_json(const json& body);
json search_config_to_json(const SearchConfig& config);

}  // namespace sboxkit::service
