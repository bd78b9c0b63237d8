#pragma once
// Non-ground logic programs: terms, atoms, comparison builtins, rules.
//
// The dialect covers function-free disjunctive programs with default negation
// and the comparison builtins =, !=, <, <=, >, >=.  Constants are tokens of the
// form [a-z0-9][A-Za-z0-9_]* (or integer literals), variables [A-Z_][A-Za-z0-9_]*.

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dimin {

enum class TermKind : std::uint8_t { constant, variable };

struct Term {
    TermKind    kind{TermKind::constant};
    std::string name;

    static Term constant(std::string name) { return {TermKind::constant, std::move(name)}; }
    static Term variable(std::string name) { return {TermKind::variable, std::move(name)}; }

    bool is_variable() const noexcept { return kind == TermKind::variable; }
    bool is_constant() const noexcept { return kind == TermKind::constant; }

    friend auto operator<=>(const Term&, const Term&) = default;
};

// Predicate name plus arity, printed as name/arity.
struct Signature {
    std::string   name;
    std::uint32_t arity{0};

    std::string to_string() const;
    // Parses "p/2"; throws Error on malformed input.
    static Signature parse(std::string_view text);

    friend auto operator<=>(const Signature&, const Signature&) = default;
};

struct Atom {
    std::string       predicate;
    std::vector<Term> args;

    std::uint32_t arity() const noexcept { return static_cast<std::uint32_t>(args.size()); }
    Signature     signature() const { return {predicate, arity()}; }
    bool          is_ground() const noexcept;

    friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class CmpOp : std::uint8_t { eq, ne, lt, le, gt, ge };

std::string_view to_string(CmpOp op) noexcept;

struct Comparison {
    Term  left;
    CmpOp op{CmpOp::eq};
    Term  right;

    friend auto operator<=>(const Comparison&, const Comparison&) = default;
};

bool is_integer_constant(std::string_view name) noexcept;
// Integers compare numerically, other constants lexicographically, and every
// integer precedes every non-integer.  = and != compare symbol identity.
bool compare_constants(std::string_view lhs, CmpOp op, std::string_view rhs);

struct Rule {
    std::vector<Atom>       head;      // empty: constraint
    std::vector<Atom>       body_pos;
    std::vector<Atom>       body_neg;
    std::vector<Comparison> comparisons;
    std::size_t             line{0};   // source line, 0 when built programmatically

    bool is_fact() const noexcept {
        return head.size() == 1 && body_pos.empty() && body_neg.empty() && comparisons.empty();
    }
    bool is_constraint() const noexcept { return head.empty(); }
    bool is_normal() const noexcept { return head.size() == 1; }
    bool is_ground() const;

    // Merges duplicate atoms inside each rule part, keeping first occurrences.
    void normalize();

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head == b.head && a.body_pos == b.body_pos && a.body_neg == b.body_neg &&
               a.comparisons == b.comparisons;
    }
};

using ConstantSet  = std::set<std::string>;
using VariableSet  = std::set<std::string>;
using SignatureSet = std::set<Signature>;

struct Program {
    std::vector<Rule> rules;

    SignatureSet vocabulary() const;

    friend bool operator==(const Program&, const Program&) = default;
};

// Name of the constant that makes up the Herbrand universe of constant-free programs.
inline constexpr std::string_view fresh_constant = "fresh";

VariableSet vars_of(const Atom& atom);
VariableSet vars_of(const Rule& rule);
VariableSet vars_of(const Program& program);
ConstantSet consts_of(const Atom& atom);
ConstantSet consts_of(const Rule& rule);
ConstantSet consts_of(const Program& program);

// C(P), or {fresh_constant} when P mentions no constant.
ConstantSet herbrand_universe(const Program& program);

// Throws SafetyError unless V(head ∪ body_neg ∪ comparisons) ⊆ V(body_pos).
void check_safety(const Rule& rule);
// Safety of every rule plus a single arity per predicate symbol.
void validate(const Program& program);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Comparison& cmp);
std::string to_string(const Rule& rule);
std::string to_string(const Program& program);

// Parses and validates a program. Throws SyntaxError, SafetyError or ArityError.
Program parse_program(std::string_view text);
Program read_program(const std::string& path);

} // namespace dimin
