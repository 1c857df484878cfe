#pragma once

#include <stdexcept>
#include <string>

namespace stv {

// Malformed input documents: bad syntax, missing fields, wrong schema version.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input with inconsistent content (unknown ids, out-of-range values).
// Messages start with a stable error code, e.g. "duplicate_candidate: c2".
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& msg) : std::runtime_error(msg) {}
};

// Work declined because it would exceed a configured enumeration limit.
class RefusalError : public std::runtime_error {
public:
    explicit RefusalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace stv
