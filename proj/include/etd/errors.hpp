#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etd {

// Bad parameters: empty angle sets, p < 1, mismatched lengths, k too large.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Work would exceed a configured size guard (exact Wasserstein).
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data rejected: malformed file rows, invalid diagram points.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace etd
