#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anharmonic {

enum class ErrorKind {
    Domain,
    Overflow,
    Pole,
    NoRoot,
    NonMonotone,
    Precondition,
    TruncationMargin,
    MissedIndex,
    DegenerateEigenfunction,
    NonContraction,
    IllConditioned,
    Config,
    Numerical,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace anharmonic
