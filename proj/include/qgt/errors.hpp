#pragma once

#include <stdexcept>
#include <string>

namespace qgt {

/* Thrown on malformed or inconsistent input data (bad quiver, surface,
 * presentation, weights).  CLI maps this to exit code 2. */
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Thrown when a computation exceeds a configured resource cap (truncation
 * length, node/row budget, coefficient growth).  CLI maps this to exit 3. */
struct CapError : std::runtime_error {
    explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

/* File-level problems: missing, unreadable, unparsable.  CLI exit 1. */
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qgt
