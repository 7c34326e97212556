#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fturn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text document. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An operation was called on input that does not satisfy its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured work budget was exhausted before the result was known.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// The start symbol derives no terminal string.
class EmptyLanguageError : public Error {
public:
    using Error::Error;
};

/// A membership query could not be decided within the search caps.
class InconclusiveError : public Error {
public:
    InconclusiveError(const std::string& word, const std::string& message)
        : Error(message), word_(word) {}
    const std::string& word() const noexcept { return word_; }

private:
    std::string word_;
};

} // namespace fturn
