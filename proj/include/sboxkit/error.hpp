#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sboxkit {

enum class ErrorCode {
    parse_error,
    invalid_argument,
    not_bijective,
    unsupported_shape,
    not_found,
    capacity_exceeded,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Thrown for every contract violation in the library. The code is stable
/// and is what the service and CLI map to status codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sboxkit
