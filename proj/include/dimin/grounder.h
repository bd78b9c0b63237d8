#pragma once
// Bottom-up grounding along the predicate-rule dependency graph, its variant
// restricted to a constant subset, and naive instantiation used as an oracle.

#include "dimin/ast.h"
#include "dimin/deadline.h"
#include "dimin/ground_program.h"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace dimin {

using Substitution = std::map<std::string, std::string>;

// Bipartite graph: nodes [0, predicates.size()) are predicates, the next
// rules.size() nodes are the program's rules in source order.
struct PredicateRuleGraph {
    std::vector<Signature>             predicates;
    std::size_t                        rule_count{0};
    std::vector<std::vector<std::size_t>> successors;

    std::size_t size() const noexcept { return predicates.size() + rule_count; }
    bool        is_rule(std::size_t node) const noexcept { return node >= predicates.size(); }
    std::size_t rule_index(std::size_t node) const noexcept { return node - predicates.size(); }
    std::size_t rule_node(std::size_t rule) const noexcept { return predicates.size() + rule; }
    std::size_t predicate_node(const Signature& sig) const;  // throws Error if absent
};

PredicateRuleGraph build_predicate_rule_graph(const Program& program);

struct Component {
    std::vector<Signature>   predicates;
    std::vector<std::size_t> rules;  // indices into the program, ascending
};

// Strongly connected components in a deterministic topological order: a
// component comes after every component it depends on; among ready
// components, predicate-only ones go first, then fact components, then the
// smallest contained rule index wins.
std::vector<Component> scc_topological_order(const PredicateRuleGraph& graph, const Program& program);

// All substitutions over vars(body) mapping every atom of body into facts.
std::vector<Substitution> good_matches(const std::vector<Atom>& body, const std::vector<Atom>& facts);

struct GroundOptions {
    AtomTablePtr table;       // shared when results must be compared by id
    Deadline     deadline;
};

GroundProgram ground(const Program& program, const GroundOptions& options = {});
// Same as ground() but variables range over `domain` only; throws DomainError
// unless domain is a subset of the Herbrand universe.
GroundProgram restrict_ground(const Program& program, const ConstantSet& domain, const GroundOptions& options = {});
// Every rule under every total assignment of its variables to `domain`.
// Comparisons are evaluated; nothing else is simplified.
GroundProgram full_instantiation(const Program& program, const ConstantSet& domain, const GroundOptions& options = {});

} // namespace dimin
