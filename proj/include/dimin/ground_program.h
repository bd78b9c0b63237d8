#pragma once

#include "dimin/atom_table.h"

#include <string>
#include <vector>

namespace dimin {

// A set of ground atoms, kept as a sorted duplicate-free id vector.
using Interpretation = std::vector<AtomId>;

Interpretation make_interpretation(std::vector<AtomId> atoms);
bool           contains(const Interpretation& set, AtomId atom);
bool           is_subset(const Interpretation& small, const Interpretation& big);

struct GroundRule {
    std::vector<AtomId> head;  // empty: constraint
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;

    bool is_fact() const noexcept { return head.size() == 1 && pos.empty() && neg.empty(); }
    bool body_empty() const noexcept { return pos.empty() && neg.empty(); }

    friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

class GroundProgram {
public:
    explicit GroundProgram(AtomTablePtr table = make_atom_table()) : table_(std::move(table)) {}

    AtomTable&          table() { return *table_; }
    const AtomTable&    table() const { return *table_; }
    const AtomTablePtr& table_ptr() const { return table_; }

    std::vector<GroundRule> rules;
    Interpretation          true_atoms;      // atoms known true during grounding
    Interpretation          possible_atoms;  // atoms possibly true during grounding
    bool                    complete{true};  // false when grounding stopped at a deadline

    // Atoms mentioned anywhere in the rules, sorted by id.
    Interpretation atoms() const;
    // Atoms occurring in some rule head.
    Interpretation head_atoms() const;
    bool           is_normal() const;
    bool           is_positive() const;

    std::string rule_text(const GroundRule& rule) const;
    // Lines in canonical order, one rule per line.
    std::vector<std::string> canonical_lines() const;
    // Canonical text without the stats trailer; its length is the size measure.
    std::string canonical_text() const;
    // Canonical text plus the "% stats:" trailer.
    std::string to_text() const;

    // Converts back to an AST; used to feed ground programs to textual tools.
    Program to_program() const;

private:
    AtomTablePtr table_;
};

// Builds a ground program from a ground AST; non-ground rules are rejected and
// comparisons between constants are evaluated.
GroundProgram from_ground_program(const Program& program, AtomTablePtr table = make_atom_table());

// Canonical printing: atoms sorted by their text, rendered as {a, b}.
std::vector<std::string> canonical_atoms(const AtomTable& table, const Interpretation& set);
std::string              format_interpretation(const AtomTable& table, const Interpretation& set);

// True iff the interpretation satisfies every rule.
bool is_model(const GroundProgram& program, const Interpretation& set);

} // namespace dimin
