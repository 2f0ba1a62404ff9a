#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace procframe {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class StartSymbolClash : public Error {
public:
    using Error::Error;
};

class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

class StateBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Raised when the reachable markings of a net exceed the state cap.
class UnboundedNet : public StateBudgetExceeded {
public:
    using StateBudgetExceeded::StateBudgetExceeded;
};

class NotEnabled : public Error {
public:
    using Error::Error;
};

class UnknownActivity : public Error {
public:
    using Error::Error;
};

class UnknownSpec : public Error {
public:
    using Error::Error;
};

class NotSplittable : public Error {
public:
    using Error::Error;
};

class EmptyLog : public Error {
public:
    using Error::Error;
};

class UnsupportedTemplate : public Error {
public:
    using Error::Error;
};

/// Malformed input. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
        : Error(format(source, line, column, message)),
          source_(std::move(source)),
          line_(line),
          column_(column) {}

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& source, std::size_t line, std::size_t column,
                              const std::string& message) {
        std::string out = source.empty() ? std::string("<input>") : source;
        if (line != 0) {
            out += ":" + std::to_string(line);
            if (column != 0) out += ":" + std::to_string(column);
        }
        return out + ": " + message;
    }

    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace procframe
