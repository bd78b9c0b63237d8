#pragma once
// Program rewritings: constant lifting into domain predicates, the
// term-preserved test, and dom/1 guarding that makes an ordinary bottom-up
// grounder instantiate variables over a chosen constant set only.

#include "dimin/ast.h"
#include "dimin/ground_program.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dimin {

struct LiftedConstant {
    std::string variable;
    std::string predicate;
};

struct LiftResult {
    Program                               lifted;
    std::map<std::string, LiftedConstant> introduced;  // keyed by constant
};

// Replaces every constant c by a fresh variable guarded with a fresh unary
// predicate and adds the fact <predicate>(c).
LiftResult dom_lift(const Program& program);

struct TermPreservedReport {
    bool              preserved{true};
    std::vector<char> rules;  // verdict per rule, in source order
};

// Throws NotNormalError on a rule with more than one head atom.
TermPreservedReport is_term_preserved(const Program& program);

// Which variables of which rules receive a dom(X) literal.
struct GuardPlacement {
    std::map<std::size_t, VariableSet> guards;  // rule index -> guarded variables

    // Every variable of every non-fact rule.
    static GuardPlacement all_variables(const Program& program);
};

struct GuardedProgram {
    Program      program;
    ConstantSet  domain;
    std::string  dom_predicate{"dom"};
    SignatureSet original_predicates;
};

struct GuardViolation {
    int         condition{0};
    std::string detail;
};

struct GuardValidation {
    bool                        valid{true};
    std::vector<GuardViolation> violations;
};

// Name for the guard predicate that does not clash with the program.
std::string fresh_dom_predicate(const Program& program);

// Emits the guarded program; throws DomainError when domain is not a subset
// of the Herbrand universe and GuardPlacementError when the placement does
// not pass validate_guarded.
GuardedProgram guard(const Program& program, const ConstantSet& domain,
                     const std::optional<GuardPlacement>& placement = std::nullopt);

// Checks the three structural conditions on the predicate-rule graph:
//  1. no component holds both the guard predicate and an original predicate;
//  2. every non-ground rule whose head is not the guard predicate depends on
//     the guard predicate, so no topological order can ground it earlier;
//  3. every rule depending on the guard predicate guards each variable that
//     occurs in one of its atoms over original predicates.
// Condition 3 is deliberately stronger than guarding only atoms over
// predicates defined after the guard: an unguarded variable bound by an
// earlier fact predicate would escape the constant range.
GuardValidation validate_guarded(const GuardedProgram& guarded);

// The guard facts of a ground program.
Interpretation dom_facts(const GroundProgram& program, const std::string& dom_predicate);

// Removes the given facts and any remaining occurrence of them in rule bodies.
GroundProgram strip_dom(const GroundProgram& program, const Interpretation& facts);

} // namespace dimin
