#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dimin {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A rule mentions a variable in its head, negative body or a comparison
// that does not occur in its positive body.
class SafetyError : public Error {
public:
    SafetyError(std::string variable, std::size_t line, const std::string& rule_text);
    const std::string& variable() const noexcept { return variable_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string variable_;
    std::size_t line_;
};

// The same predicate symbol is used with two different arities.
class ArityError : public Error {
public:
    ArityError(std::string predicate, unsigned first, unsigned second);
    const std::string& predicate() const noexcept { return predicate_; }

private:
    std::string predicate_;
};

// Raised by every operation that enumerates subsets when the input exceeds the
// configured limit. Results are never silently truncated.
class SizeGuardError : public Error {
public:
    SizeGuardError(const std::string& operation, std::size_t size, std::size_t limit);
    std::size_t size() const noexcept { return size_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t size_;
    std::size_t limit_;
};

// A constant set is not a subset of the Herbrand universe it is used with.
class DomainError : public Error {
public:
    using Error::Error;
};

// An operation defined on normal programs was given a disjunctive one.
class NotNormalError : public Error {
public:
    using Error::Error;
};

// A dom/1 guard placement that does not yield a D-guarded program.
class GuardPlacementError : public Error {
public:
    GuardPlacementError(int condition, const std::string& detail);
    int condition() const noexcept { return condition_; }

private:
    int condition_;
};

class IncompatibleHeuristicError : public Error {
public:
    using Error::Error;
};

class TimeoutError : public Error {
public:
    using Error::Error;
};

} // namespace dimin
