#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ctxdiv {

/// Base of all data/input errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed XML input.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::int64_t byte_offset)
        : Error(message + " at byte " + std::to_string(byte_offset)), byte_offset_(byte_offset)
    {
    }

    [[nodiscard]] std::int64_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::int64_t byte_offset_;
};

/// The corpus contains no element with a configured entity label.
class EmptyCorpusError : public Error {
public:
    using Error::Error;
};

/// An index directory was written with a different format version.
class VersionMismatchError : public Error {
public:
    VersionMismatchError(std::int64_t found, std::int64_t expected)
        : Error("index format version " + std::to_string(found) + " (expected " + std::to_string(expected) + ")"),
          found_(found)
    {
    }

    [[nodiscard]] std::int64_t found() const noexcept { return found_; }

private:
    std::int64_t found_;
};

/// A persisted index file violates its format; carries file and 1-based line.
class CorruptIndexError : public Error {
public:
    CorruptIndexError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line)
    {
    }

    [[nodiscard]] const std::string& file() const noexcept { return file_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// No query keyword has any feature term.
class NoIntentError : public Error {
public:
    using Error::Error;
};

} // namespace ctxdiv
