#pragma once
// Stable-model semantics of ground programs: reduct, minimal models, answer
// sets, positive dependency graph, loops, elementary loops and loop formulas.

#include "dimin/deadline.h"
#include "dimin/ground_program.h"

#include <optional>
#include <unordered_map>
#include <vector>

namespace dimin {

// Limit for every operation that enumerates subsets of atoms.
inline constexpr std::size_t default_subset_limit = 22;

GroundProgram  gl_reduct(const GroundProgram& program, const Interpretation& candidate);
// Least model of a positive normal program; constraints are ignored.
Interpretation least_model(const GroundProgram& program);
// All subset-minimal models of a positive program, by enumeration over head atoms.
std::vector<Interpretation> minimal_models(const GroundProgram& program, std::size_t limit = default_subset_limit);

struct SolveOptions {
    std::size_t max_models{0};       // 0: enumerate all
    std::size_t atom_limit{4096};    // unassigned atoms allowed after initial propagation
    Deadline    deadline;
};

// Answer sets in canonical order. Uses propagation and backtracking search;
// every reported set is verified against the definition before it is kept.
std::vector<Interpretation> answer_sets(const GroundProgram& program, const SolveOptions& options = {});
// The definition taken literally: every subset S of head atoms with S a
// minimal model of the reduct. Guarded by `limit` head atoms.
std::vector<Interpretation> answer_sets_by_definition(const GroundProgram& program,
                                                      std::size_t limit = default_subset_limit);

// Searches I' with base ∪ I' a model of the program and no non-empty
// unfounded subset of I' (equivalently, every loop inside I' has its loop
// formula satisfied). Atoms of base are taken as true without support.
std::optional<Interpretation> find_loop_extension(const GroundProgram& program, const Interpretation& base,
                                                  const SolveOptions& options = {});

void sort_canonical(const AtomTable& table, std::vector<Interpretation>& sets);

struct DependencyGraph {
    Interpretation                                   atoms;
    std::unordered_map<AtomId, std::vector<AtomId>> successors;  // head atom -> positive body atoms

    bool has_edge(AtomId from, AtomId to) const;
    // Strongly connected components, each sorted by id.
    std::vector<Interpretation> components() const;
};

DependencyGraph positive_dependency_graph(const GroundProgram& program);

bool is_loop(const Interpretation& set, const DependencyGraph& graph);
// Every loop, singletons included. Throws SizeGuardError when a component of
// the positive dependency graph exceeds `limit` atoms.
std::vector<Interpretation> loops(const GroundProgram& program, std::size_t limit = default_subset_limit);

struct SupportSplit {
    std::vector<std::size_t> external;  // head meets the loop, positive body avoids it
    std::vector<std::size_t> internal;  // head meets the loop, positive body meets it
};
SupportSplit external_supports(const Interpretation& loop, const GroundProgram& program);

struct LoopFormula {
    Interpretation           loop;
    std::vector<std::size_t> supports;  // rule indices of the external supports
};
LoopFormula loop_formula(const Interpretation& loop, const GroundProgram& program);

bool satisfies_loop_formula(const Interpretation& candidate, const Interpretation& loop, const GroundProgram& program);

bool is_elementary_loop(const Interpretation& loop, const GroundProgram& program,
                        std::size_t limit = default_subset_limit);
std::vector<Interpretation> elementary_loops(const GroundProgram& program, std::size_t limit = default_subset_limit);

} // namespace dimin
