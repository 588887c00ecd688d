#pragma once

#include <stdexcept>
#include <string>

namespace qhardy {

// Input vector has (numerically) zero norm and cannot be normalized.
class ZeroVectorError : public std::runtime_error {
public:
    explicit ZeroVectorError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter outside its admissible interval.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Conditioning event has probability below the definedness threshold.
class UndefinedConditionalError : public std::runtime_error {
public:
    explicit UndefinedConditionalError(const std::string& what) : std::runtime_error(what) {}
};

// Text input rejected by a parser; carries 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Derivation step reference that is not strictly earlier than the step itself.
class IndexError : public std::runtime_error {
public:
    explicit IndexError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qhardy
