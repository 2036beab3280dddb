#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line and a field path when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::string field = {})
        : Error(compose(message, line, field)), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string compose(const std::string& message, std::size_t line, const std::string& field) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!field.empty()) out += field + ": ";
        return out + message;
    }

    std::size_t line_;
    std::string field_;
};

/// An input is well-formed but outside the domain of the requested operation
/// (wild quiver where a root description is required, oriented cycle, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A floating-point computation could not produce a trustworthy value.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace qdyn
