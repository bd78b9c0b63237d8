#pragma once
// Exact classification of a constant subset D of a program's Herbrand
// universe: admissible, safe, predicate-preserved, splitting-safe,
// loop-admissible and elementary-loop-admissible.
//
// P|_D always means full_instantiation(P, D). Answer sets of both groundings
// are enumerated once and shared by all checks of one DiminutionChecker.

#include "dimin/ast.h"
#include "dimin/ground_program.h"
#include "dimin/semantics.h"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dimin {

struct Diminution {
    ConstantSet  constants;
    SignatureSet preserved;  // may be empty
};

enum class Verdict { yes, no, unknown };
std::string_view to_string(Verdict v) noexcept;

enum class SplitStatus { yes, no, precondition_failed };
std::string_view to_string(SplitStatus s) noexcept;

struct Decision {
    bool                          holds{true};
    std::optional<Interpretation> witness;  // always set when holds == false
};

struct LoopEvidence {
    Verdict     verdict{Verdict::unknown};
    Verdict     extension_condition{Verdict::unknown};  // every reduced answer set extends
    Verdict     loop_condition{Verdict::unknown};       // no supported reduced loop inside a new loop
    std::string detail;
    std::optional<Interpretation> reduced_answer_set;  // answer set without an extension
    std::optional<Interpretation> loop;                // offending loop of the full grounding
    std::optional<Interpretation> inner_loop;          // its supported sub-loop of P|_D
    std::size_t straddling_violations{0};  // loops meeting both I_D and I' whose formula fails
};

struct SplitDecision {
    SplitStatus                status{SplitStatus::precondition_failed};
    std::optional<std::string> witness_rule;
};

enum class PreserveMode { admissible, safe };

struct CheckOptions {
    std::size_t  subset_limit{default_subset_limit};
    SolveOptions solve;
};

struct DiminutionReport {
    Decision                admissible;
    Decision                safe;
    std::optional<Decision> preserved_admissible;  // set when preserved predicates are given
    std::optional<Decision> preserved_safe;
    SplitDecision           splitting_safe;
    LoopEvidence            loop_admissible;
    LoopEvidence            elementary_loop_admissible;
    std::size_t             reduced_answer_sets{0};
    std::size_t             full_answer_sets{0};
    std::vector<std::string> lattice_violations;  // implications that failed on this instance
    AtomTablePtr            table;

    std::string to_text() const;  // key=value lines
};

class DiminutionChecker {
public:
    // Throws DomainError unless D is a subset of the Herbrand universe.
    DiminutionChecker(Program program, Diminution diminution, CheckOptions options = {});

    const GroundProgram& reduced() const { return reduced_; }
    const GroundProgram& full() const { return full_; }
    const std::vector<Interpretation>& reduced_answer_sets();
    const std::vector<Interpretation>& full_answer_sets();

    Decision      admissible();
    Decision      safe();
    Decision      preserved(PreserveMode mode);
    SplitDecision splitting_safe();
    LoopEvidence  loop_admissible();
    LoopEvidence  elementary_loop_admissible();

    DiminutionReport classify();

    const AtomTable& table() const { return *table_; }

private:
    Interpretation project(const Interpretation& set) const;
    Verdict        extension_condition(LoopEvidence& evidence);
    LoopEvidence   loop_check(bool elementary);

    Program       program_;
    Diminution    diminution_;
    CheckOptions  options_;
    AtomTablePtr  table_;
    GroundProgram reduced_;
    GroundProgram full_;
    std::optional<std::vector<Interpretation>> reduced_as_, full_as_;
    std::optional<LoopEvidence>                extension_;
};

Decision         check_admissible(const Program& program, const Diminution& d, const CheckOptions& o = {});
Decision         check_safe(const Program& program, const Diminution& d, const CheckOptions& o = {});
Decision         check_preserved(const Program& program, const Diminution& d, PreserveMode mode, const CheckOptions& o = {});
SplitDecision    check_splitting_safe(const Program& program, const Diminution& d, const CheckOptions& o = {});
LoopEvidence     check_loop_admissible(const Program& program, const Diminution& d, const CheckOptions& o = {});
LoopEvidence     check_elementary_loop_admissible(const Program& program, const Diminution& d, const CheckOptions& o = {});
DiminutionReport classify(const Program& program, const Diminution& d, const CheckOptions& o = {});

// Lattice implications for one report; returns a description of each failure.
std::vector<std::string> lattice_violations(const DiminutionReport& report);

} // namespace dimin
