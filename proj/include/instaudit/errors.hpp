#pragma once

#include <stdexcept>
#include <string>

namespace instaudit {

// Base for anything wrong with user-supplied data or files. The CLI maps
// these to exit code 3; everything else unexpected maps to 4.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unparseable input (bad JSON, bad number).
class ParseError : public DataError {
public:
    explicit ParseError(const std::string& msg) : DataError("malformed input: " + msg) {}
};

// Structurally valid input that does not match the expected schema.
class SchemaError : public DataError {
public:
    explicit SchemaError(const std::string& msg) : DataError("schema violation: " + msg) {}
};

// Well-formed input whose values break a domain invariant (negative count, ...).
class DomainError : public DataError {
public:
    explicit DomainError(const std::string& msg) : DataError("domain violation: " + msg) {}
};

} // namespace instaudit
