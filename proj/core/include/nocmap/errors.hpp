#pragma once

#include <stdexcept>
#include <string>

namespace nocmap {

/// Raised when a graph does not fit the target mesh (core count > tile
/// count) or a solver refuses an instance that is too large for it.
class SizingError : public std::runtime_error {
public:
    explicit SizingError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the APCG text parser; carries the 1-based line number.
class ApcgParseError : public std::runtime_error {
public:
    ApcgParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace nocmap
