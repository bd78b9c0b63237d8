#include "dimin/diminution.h"

#include "dimin/error.h"
#include "dimin/grounder.h"

#include <algorithm>
#include <sstream>

namespace dimin {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(SplitStatus s) noexcept {
    switch (s) {
    case SplitStatus::yes: return "true";
    case SplitStatus::no: return "false";
    case SplitStatus::precondition_failed: return "precondition_failed";
    }
    return "precondition_failed";
}

DiminutionChecker::DiminutionChecker(Program program, Diminution diminution, CheckOptions options)
    : program_(std::move(program)), diminution_(std::move(diminution)), options_(std::move(options)),
      table_(make_atom_table()), reduced_(table_), full_(table_) {
    auto hu = herbrand_universe(program_);
    for (const auto& c : diminution_.constants)
        if (!hu.count(c)) throw DomainError("constant " + c + " is not in the Herbrand universe");
    GroundOptions g{table_, options_.solve.deadline};
    reduced_ = full_instantiation(program_, diminution_.constants, g);
    full_ = full_instantiation(program_, hu, g);
    if (!reduced_.complete || !full_.complete) throw TimeoutError("instantiation did not finish");
}

const std::vector<Interpretation>& DiminutionChecker::reduced_answer_sets() {
    if (!reduced_as_) reduced_as_ = answer_sets(reduced_, options_.solve);
    return *reduced_as_;
}

const std::vector<Interpretation>& DiminutionChecker::full_answer_sets() {
    if (!full_as_) full_as_ = answer_sets(full_, options_.solve);
    return *full_as_;
}

Decision DiminutionChecker::admissible() {
    const auto& full = full_answer_sets();
    for (const auto& small : reduced_answer_sets()) {
        bool extends = std::any_of(full.begin(), full.end(), [&](const Interpretation& big) { return is_subset(small, big); });
        if (!extends) return {false, small};
    }
    return {true, std::nullopt};
}

Decision DiminutionChecker::safe() {
    auto base = admissible();
    if (!base.holds) return base;
    const auto& reduced = reduced_answer_sets();
    for (const auto& big : full_answer_sets()) {
        bool covered = std::any_of(reduced.begin(), reduced.end(), [&](const Interpretation& small) { return is_subset(small, big); });
        if (!covered) return {false, big};
    }
    return {true, std::nullopt};
}

Interpretation DiminutionChecker::project(const Interpretation& set) const {
    Interpretation out;
    for (auto a : set)
        if (diminution_.preserved.count(table_->signature(a))) out.push_back(a);
    return out;
}

Decision DiminutionChecker::preserved(PreserveMode mode) {
    auto base = mode == PreserveMode::safe ? safe() : admissible();
    if (!base.holds) return base;
    const auto& full = full_answer_sets();
    for (const auto& small : reduced_answer_sets()) {
        auto target = project(small);
        bool matched = std::any_of(full.begin(), full.end(), [&](const Interpretation& big) { return project(big) == target; });
        if (!matched) return {false, small};
    }
    return {true, std::nullopt};
}

SplitDecision DiminutionChecker::splitting_safe() {
    if (full_answer_sets().empty()) return {SplitStatus::precondition_failed, std::nullopt};
    auto inside = reduced_.atoms();
    auto in = [&](AtomId a) { return contains(inside, a); };
    for (const auto& r : full_.rules) {
        if (!std::any_of(r.head.begin(), r.head.end(), in)) continue;
        bool closed = std::all_of(r.head.begin(), r.head.end(), in) && std::all_of(r.pos.begin(), r.pos.end(), in) &&
                      std::all_of(r.neg.begin(), r.neg.end(), in);
        if (!closed) return {SplitStatus::no, full_.rule_text(r)};
    }
    return {SplitStatus::yes, std::nullopt};
}

Verdict DiminutionChecker::extension_condition(LoopEvidence& evidence) {
    if (!extension_) {
        LoopEvidence e;
        try {
            e.extension_condition = Verdict::yes;
            std::vector<Interpretation> loops_full;
            bool have_loops = true;
            try {
                loops_full = loops(full_, options_.subset_limit);
            } catch (const SizeGuardError&) {
                have_loops = false;
            }
            for (const auto& small : reduced_answer_sets()) {
                auto extra = find_loop_extension(full_, small, options_.solve);
                if (!extra) {
                    e.extension_condition = Verdict::no;
                    e.reduced_answer_set = small;
                    e.detail = "an answer set of P|_D has no extension satisfying the full grounding";
                    break;
                }
                if (!have_loops) continue;
                Interpretation both;
                std::set_union(small.begin(), small.end(), extra->begin(), extra->end(), std::back_inserter(both));
                for (const auto& l : loops_full) {
                    if (l.size() < 2 || !is_subset(l, both)) continue;
                    bool meets_small = std::any_of(l.begin(), l.end(), [&](AtomId a) { return contains(small, a); });
                    bool meets_extra = std::any_of(l.begin(), l.end(), [&](AtomId a) { return contains(*extra, a); });
                    if (meets_small && meets_extra && !satisfies_loop_formula(both, l, full_)) ++e.straddling_violations;
                }
            }
        } catch (const SizeGuardError& ex) {
            e.extension_condition = Verdict::unknown;
            e.detail = ex.what();
        } catch (const TimeoutError& ex) {
            e.extension_condition = Verdict::unknown;
            e.detail = ex.what();
        }
        extension_ = e;
    }
    evidence.extension_condition = extension_->extension_condition;
    evidence.reduced_answer_set = extension_->reduced_answer_set;
    evidence.straddling_violations = extension_->straddling_violations;
    if (!extension_->detail.empty()) evidence.detail = extension_->detail;
    return extension_->extension_condition;
}

LoopEvidence DiminutionChecker::loop_check(bool elementary) {
    LoopEvidence e;
    extension_condition(e);
    try {
        auto red_graph = positive_dependency_graph(reduced_);
        auto red_atoms = reduced_.atoms();
        auto candidates = elementary ? elementary_loops(full_, options_.subset_limit) : loops(full_, options_.subset_limit);
        auto qualifies = [&](const Interpretation& set) {
            if (!is_loop(set, red_graph)) return false;
            return !elementary || is_elementary_loop(set, reduced_, options_.subset_limit);
        };
        e.loop_condition = Verdict::yes;
        for (const auto& l : candidates) {
            if (l.size() < 2 || qualifies(l)) continue;
            Interpretation shared;
            std::set_intersection(l.begin(), l.end(), red_atoms.begin(), red_atoms.end(), std::back_inserter(shared));
            if (shared.empty()) continue;
            if (shared.size() > std::min<std::size_t>(options_.subset_limit, 62))
                throw SizeGuardError("sub-loop search", shared.size(), options_.subset_limit);
            const std::uint64_t end = std::uint64_t{1} << shared.size();
            for (std::uint64_t m = 1; m < end; ++m) {
                Interpretation sub;
                for (std::size_t i = 0; i < shared.size(); ++i)
                    if (m >> i & 1) sub.push_back(shared[i]);
                if (sub == l || !qualifies(sub)) continue;
                if (external_supports(sub, reduced_).external.empty()) continue;
                e.loop_condition = Verdict::no;
                e.loop = l;
                e.inner_loop = sub;
                e.detail = "a loop of the full grounding that is not a loop of P|_D contains a supported loop of P|_D";
                break;
            }
            if (e.loop_condition == Verdict::no) break;
        }
    } catch (const SizeGuardError& ex) {
        e.loop_condition = Verdict::unknown;
        if (e.detail.empty()) e.detail = ex.what();
    }
    if (e.extension_condition == Verdict::no || e.loop_condition == Verdict::no) e.verdict = Verdict::no;
    else if (e.extension_condition == Verdict::yes && e.loop_condition == Verdict::yes) e.verdict = Verdict::yes;
    else e.verdict = Verdict::unknown;
    return e;
}

LoopEvidence DiminutionChecker::loop_admissible() { return loop_check(false); }
LoopEvidence DiminutionChecker::elementary_loop_admissible() { return loop_check(true); }

std::vector<std::string> lattice_violations(const DiminutionReport& r) {
    std::vector<std::string> out;
    if (r.splitting_safe.status == SplitStatus::yes && !r.safe.holds) out.push_back("splitting_safe => safe");
    if (r.safe.holds && !r.admissible.holds) out.push_back("safe => admissible");
    if (r.loop_admissible.verdict == Verdict::yes && !r.admissible.holds) out.push_back("loop_admissible => admissible");
    if (r.elementary_loop_admissible.verdict == Verdict::yes && !r.admissible.holds)
        out.push_back("elementary_loop_admissible => admissible");
    if (r.loop_admissible.verdict == Verdict::yes && r.elementary_loop_admissible.verdict == Verdict::no)
        out.push_back("loop_admissible => elementary_loop_admissible");
    return out;
}

DiminutionReport DiminutionChecker::classify() {
    DiminutionReport r;
    r.table = table_;
    r.reduced_answer_sets = reduced_answer_sets().size();
    r.full_answer_sets = full_answer_sets().size();
    r.admissible = admissible();
    r.safe = safe();
    if (!diminution_.preserved.empty()) {
        r.preserved_admissible = preserved(PreserveMode::admissible);
        r.preserved_safe = preserved(PreserveMode::safe);
    }
    r.splitting_safe = splitting_safe();
    r.loop_admissible = loop_admissible();
    r.elementary_loop_admissible = elementary_loop_admissible();
    r.lattice_violations = lattice_violations(r);
    return r;
}

std::string DiminutionReport::to_text() const {
    std::ostringstream out;
    auto yesno = [](bool b) { return b ? "true" : "false"; };
    auto witness = [&](const char* key, const std::optional<Interpretation>& w) {
        if (w) out << key << '=' << format_interpretation(*table, *w) << '\n';
    };
    out << "admissible=" << yesno(admissible.holds) << '\n';
    witness("admissible_witness", admissible.witness);
    out << "safe=" << yesno(safe.holds) << '\n';
    witness("safe_witness", safe.witness);
    if (preserved_admissible) {
        out << "preserved_admissible=" << yesno(preserved_admissible->holds) << '\n';
        witness("preserved_admissible_witness", preserved_admissible->witness);
    }
    if (preserved_safe) {
        out << "preserved_safe=" << yesno(preserved_safe->holds) << '\n';
        witness("preserved_safe_witness", preserved_safe->witness);
    }
    out << "splitting_safe=" << to_string(splitting_safe.status) << '\n';
    if (splitting_safe.witness_rule) out << "splitting_witness=" << *splitting_safe.witness_rule << '\n';
    auto loops = [&](const char* key, const LoopEvidence& e) {
        out << key << '=' << to_string(e.verdict) << '\n';
        out << key << "_extension=" << to_string(e.extension_condition) << '\n';
        out << key << "_loops=" << to_string(e.loop_condition) << '\n';
        if (e.reduced_answer_set) out << key << "_witness=" << format_interpretation(*table, *e.reduced_answer_set) << '\n';
        if (e.loop) out << key << "_loop=" << format_interpretation(*table, *e.loop) << '\n';
        if (e.inner_loop) out << key << "_inner_loop=" << format_interpretation(*table, *e.inner_loop) << '\n';
        if (e.straddling_violations) out << key << "_straddling_violations=" << e.straddling_violations << '\n';
        if (!e.detail.empty()) out << key << "_detail=" << e.detail << '\n';
    };
    loops("loop_admissible", loop_admissible);
    loops("elementary_loop_admissible", elementary_loop_admissible);
    out << "reduced_answer_sets=" << reduced_answer_sets << '\n';
    out << "full_answer_sets=" << full_answer_sets << '\n';
    for (const auto& v : lattice_violations) out << "lattice_violation=" << v << '\n';
    return out.str();
}

Decision check_admissible(const Program& p, const Diminution& d, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).admissible();
}
Decision check_safe(const Program& p, const Diminution& d, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).safe();
}
Decision check_preserved(const Program& p, const Diminution& d, PreserveMode mode, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).preserved(mode);
}
SplitDecision check_splitting_safe(const Program& p, const Diminution& d, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).splitting_safe();
}
LoopEvidence check_loop_admissible(const Program& p, const Diminution& d, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).loop_admissible();
}
LoopEvidence check_elementary_loop_admissible(const Program& p, const Diminution& d, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).elementary_loop_admissible();
}
DiminutionReport classify(const Program& p, const Diminution& d, const CheckOptions& o) {
    return DiminutionChecker(p, d, o).classify();
}

} // namespace dimin
