#include "dimin/transform.h"

#include "dimin/error.h"
#include "dimin/grounder.h"

#include <algorithm>
#include <set>

namespace dimin {

namespace {

std::string sanitize(const std::string& constant) {
    std::string out;
    for (char c : constant) out += c == '-' ? 'm' : c;
    return out;
}

std::set<std::string> predicate_names(const Program& program) {
    std::set<std::string> out;
    for (const auto& s : program.vocabulary()) out.insert(s.name);
    return out;
}

std::string unique_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 2;; ++i) {
        auto name = base + "_" + std::to_string(i);
        if (!taken.count(name)) return name;
    }
}

void rename(Term& t, const std::string& constant, const std::string& variable, bool& hit) {
    if (t.is_constant() && t.name == constant) {
        t = Term::variable(variable);
        hit = true;
    }
}

} // namespace

LiftResult dom_lift(const Program& program) {
    LiftResult out;
    out.lifted = program;
    auto preds = predicate_names(program);
    auto vars = vars_of(program);
    std::set<std::string> taken_vars(vars.begin(), vars.end());
    for (const auto& c : consts_of(program)) {
        LiftedConstant lc;
        lc.predicate = unique_name("dom__" + sanitize(c), preds);
        preds.insert(lc.predicate);
        lc.variable = unique_name("V__" + sanitize(c), taken_vars);
        taken_vars.insert(lc.variable);
        for (auto& r : out.lifted.rules) {
            bool hit = false;
            for (auto* part : {&r.head, &r.body_pos, &r.body_neg})
                for (auto& a : *part)
                    for (auto& t : a.args) rename(t, c, lc.variable, hit);
            for (auto& cmp : r.comparisons) {
                rename(cmp.left, c, lc.variable, hit);
                rename(cmp.right, c, lc.variable, hit);
            }
            if (hit) r.body_pos.push_back(Atom{lc.predicate, {Term::variable(lc.variable)}});
        }
        Rule fact;
        fact.head.push_back(Atom{lc.predicate, {Term::constant(c)}});
        out.lifted.rules.push_back(std::move(fact));
        out.introduced.emplace(c, std::move(lc));
    }
    return out;
}

TermPreservedReport is_term_preserved(const Program& program) {
    TermPreservedReport report;
    for (const auto& r : program.rules) {
        if (r.head.size() > 1) throw NotNormalError("term-preserved test needs a normal program: " + to_string(r));
        VariableSet hv;
        ConstantSet hc;
        for (const auto& a : r.head) {
            auto v = vars_of(a);
            auto c = consts_of(a);
            hv.insert(v.begin(), v.end());
            hc.insert(c.begin(), c.end());
        }
        Rule body = r;
        body.head.clear();
        auto bv = vars_of(body);
        auto bc = consts_of(body);
        bool ok = std::includes(hv.begin(), hv.end(), bv.begin(), bv.end()) &&
                  std::includes(hc.begin(), hc.end(), bc.begin(), bc.end());
        report.rules.push_back(ok);
        report.preserved = report.preserved && ok;
    }
    return report;
}

GuardPlacement GuardPlacement::all_variables(const Program& program) {
    GuardPlacement p;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        if (program.rules[i].is_fact()) continue;
        auto v = vars_of(program.rules[i]);
        if (!v.empty()) p.guards.emplace(i, std::move(v));
    }
    return p;
}

std::string fresh_dom_predicate(const Program& program) { return unique_name("dom", predicate_names(program)); }

GuardedProgram guard(const Program& program, const ConstantSet& domain, const std::optional<GuardPlacement>& placement) {
    auto hu = herbrand_universe(program);
    for (const auto& c : domain)
        if (!hu.count(c)) throw DomainError("constant " + c + " is not in the Herbrand universe");
    GuardedProgram g;
    g.domain = domain;
    g.dom_predicate = fresh_dom_predicate(program);
    g.original_predicates = program.vocabulary();
    g.program = program;
    auto plan = placement ? *placement : GuardPlacement::all_variables(program);
    for (const auto& [index, vars] : plan.guards) {
        if (index >= g.program.rules.size()) throw Error("guard placement names rule " + std::to_string(index));
        auto& r = g.program.rules[index];
        for (const auto& v : vars) r.body_pos.push_back(Atom{g.dom_predicate, {Term::variable(v)}});
        r.normalize();
    }
    for (const auto& c : domain) {
        Rule fact;
        fact.head.push_back(Atom{g.dom_predicate, {Term::constant(c)}});
        g.program.rules.push_back(std::move(fact));
    }
    auto check = validate_guarded(g);
    if (!check.valid) throw GuardPlacementError(check.violations.front().condition, check.violations.front().detail);
    return g;
}

GuardValidation validate_guarded(const GuardedProgram& guarded) {
    GuardValidation out;
    const auto& program = guarded.program;
    const Signature dom{guarded.dom_predicate, 1};
    auto vocab = program.vocabulary();
    if (!vocab.count(dom)) {
        // Without any guard literal or fact the only valid programs are ground ones.
        for (std::size_t i = 0; i < program.rules.size(); ++i)
            if (!vars_of(program.rules[i]).empty())
                out.violations.push_back({2, "rule " + std::to_string(i) + " has variables but no guard predicate exists"});
        out.valid = out.violations.empty();
        return out;
    }
    auto graph = build_predicate_rule_graph(program);
    auto order = scc_topological_order(graph, program);

    auto is_original = [&](const Signature& s) { return s != dom && guarded.original_predicates.count(s); };
    for (const auto& comp : order) {
        bool has_dom = std::count(comp.predicates.begin(), comp.predicates.end(), dom) > 0;
        if (!has_dom) continue;
        for (const auto& s : comp.predicates)
            if (is_original(s)) out.violations.push_back({1, "guard predicate shares a component with " + s.to_string()});
    }

    // Nodes reachable from the guard predicate.
    std::vector<char> below(graph.size(), 0);
    std::vector<std::size_t> stack{graph.predicate_node(dom)};
    below[stack.back()] = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : graph.successors[v])
            if (!below[w]) {
                below[w] = 1;
                stack.push_back(w);
            }
    }

    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const auto& r = program.rules[i];
        bool defines_dom = std::any_of(r.head.begin(), r.head.end(), [&](const Atom& a) { return a.signature() == dom; });
        if (defines_dom) continue;
        bool descendant = below[graph.rule_node(i)] != 0;
        if (!vars_of(r).empty() && !descendant)
            out.violations.push_back({2, "rule " + std::to_string(i) + " (" + to_string(r) +
                                             ") has variables and can be grounded before the guard predicate"});
        if (!descendant) continue;
        VariableSet guarded_vars;
        for (const auto& a : r.body_pos)
            if (a.signature() == dom && a.args.size() == 1 && a.args[0].is_variable()) guarded_vars.insert(a.args[0].name);
        for (const auto* part : {&r.head, &r.body_pos, &r.body_neg})
            for (const auto& a : *part) {
                if (!is_original(a.signature())) continue;
                for (const auto& v : vars_of(a))
                    if (!guarded_vars.count(v))
                        out.violations.push_back({3, "variable " + v + " of rule " + std::to_string(i) + " (" +
                                                         to_string(r) + ") is not guarded"});
            }
    }
    std::stable_sort(out.violations.begin(), out.violations.end(),
                     [](const GuardViolation& a, const GuardViolation& b) { return a.condition < b.condition; });
    out.valid = out.violations.empty();
    return out;
}

Interpretation dom_facts(const GroundProgram& program, const std::string& dom_predicate) {
    std::vector<AtomId> out;
    for (const auto& r : program.rules)
        if (r.is_fact() && program.table().arity(r.head[0]) == 1 &&
            program.table().name(program.table().predicate(r.head[0])) == dom_predicate)
            out.push_back(r.head[0]);
    return make_interpretation(std::move(out));
}

GroundProgram strip_dom(const GroundProgram& program, const Interpretation& facts) {
    GroundProgram out(program.table_ptr());
    out.complete = program.complete;
    for (const auto& r : program.rules) {
        if (r.is_fact() && contains(facts, r.head[0])) continue;
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return contains(facts, a); })) continue;
        GroundRule g = r;
        std::erase_if(g.pos, [&](AtomId a) { return contains(facts, a); });
        out.rules.push_back(std::move(g));
    }
    auto drop = [&](const Interpretation& set) {
        Interpretation kept;
        std::set_difference(set.begin(), set.end(), facts.begin(), facts.end(), std::back_inserter(kept));
        return kept;
    };
    out.true_atoms = drop(program.true_atoms);
    out.possible_atoms = drop(program.possible_atoms);
    return out;
}

} // namespace dimin
