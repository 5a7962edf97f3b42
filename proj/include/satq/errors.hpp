#pragma once

#include <stdexcept>
#include <string>

namespace satq {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class NoVisibility : public Error {
public:
    explicit NoVisibility(const std::string& msg) : Error(msg) {}
};

class ElevationBelowTable : public Error {
public:
    explicit ElevationBelowTable(const std::string& msg) : Error(msg) {}
};

// Carries the 1-based line number of the offending CSV row.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

class NonMonotonicTime : public ParseError {
public:
    NonMonotonicTime(const std::string& msg, long line) : ParseError(msg, line) {}
};

class LossOutOfRange : public ParseError {
public:
    LossOutOfRange(const std::string& msg, long line) : ParseError(msg, line) {}
};

class BudgetTooLarge : public Error {
public:
    explicit BudgetTooLarge(const std::string& msg) : Error(msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

class DegenerateIntensities : public Error {
public:
    explicit DegenerateIntensities(const std::string& msg) : Error(msg) {}
};

class ZeroDivision : public Error {
public:
    explicit ZeroDivision(const std::string& msg) : Error(msg) {}
};

class NoFeasiblePoint : public Error {
public:
    explicit NoFeasiblePoint(const std::string& msg) : Error(msg) {}
};

}  // namespace satq
