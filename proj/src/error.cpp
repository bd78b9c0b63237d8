#include "dimin/error.h"

namespace dimin {

namespace {
std::string position(std::size_t line, std::size_t column) {
    return std::to_string(line) + ":" + std::to_string(column);
}
} // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& what)
    : Error("syntax error at " + position(line, column) + ": " + what), line_(line), column_(column) {}

SafetyError::SafetyError(std::string variable, std::size_t line, const std::string& rule_text)
    : Error("unsafe variable " + variable + (line ? " on line " + std::to_string(line) : std::string{}) +
            " in rule: " + rule_text),
      variable_(std::move(variable)), line_(line) {}

ArityError::ArityError(std::string predicate, unsigned first, unsigned second)
    : Error("predicate " + predicate + " used with arity " + std::to_string(first) + " and " +
            std::to_string(second)),
      predicate_(std::move(predicate)) {}

SizeGuardError::SizeGuardError(const std::string& operation, std::size_t size, std::size_t limit)
    : Error(operation + ": size " + std::to_string(size) + " exceeds limit " + std::to_string(limit)),
      size_(size), limit_(limit) {}

GuardPlacementError::GuardPlacementError(int condition, const std::string& detail)
    : Error("guard placement violates condition " + std::to_string(condition) + ": " + detail),
      condition_(condition) {}

} // namespace dimin
