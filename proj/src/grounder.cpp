#include "dimin/grounder.h"

#include "dimin/error.h"
#include "dimin/graph.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace dimin {

std::size_t PredicateRuleGraph::predicate_node(const Signature& sig) const {
    auto it = std::lower_bound(predicates.begin(), predicates.end(), sig);
    if (it == predicates.end() || *it != sig) throw Error("unknown predicate " + sig.to_string());
    return static_cast<std::size_t>(it - predicates.begin());
}

PredicateRuleGraph build_predicate_rule_graph(const Program& program) {
    PredicateRuleGraph g;
    auto vocab = program.vocabulary();
    g.predicates.assign(vocab.begin(), vocab.end());
    g.rule_count = program.rules.size();
    g.successors.resize(g.size());
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const auto& r = program.rules[i];
        auto rn = g.rule_node(i);
        for (const auto* part : {&r.body_pos, &r.body_neg})
            for (const auto& a : *part) g.successors[g.predicate_node(a.signature())].push_back(rn);
        for (const auto& a : r.head) g.successors[rn].push_back(g.predicate_node(a.signature()));
    }
    for (auto& s : g.successors) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return g;
}

std::vector<Component> scc_topological_order(const PredicateRuleGraph& graph, const Program& program) {
    std::size_t count = 0;
    auto comp = strongly_connected(graph.successors, count);
    std::vector<Component> parts(count);
    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (graph.is_rule(v)) parts[comp[v]].rules.push_back(graph.rule_index(v));
        else parts[comp[v]].predicates.push_back(graph.predicates[v]);
    }
    std::vector<std::vector<std::size_t>> next(count);
    std::vector<std::size_t>              indegree(count, 0);
    for (std::size_t v = 0; v < graph.size(); ++v)
        for (auto w : graph.successors[v])
            if (comp[v] != comp[w]) next[comp[v]].push_back(comp[w]);
    for (auto& s : next) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (auto w : s) ++indegree[w];
    }
    // Priority: predicate-only, then single facts, then by smallest rule index.
    auto key = [&](std::size_t c) {
        const auto& p = parts[c];
        if (p.rules.empty()) return std::tuple<int, std::size_t>{0, c};
        bool fact = p.rules.size() == 1 && program.rules[p.rules[0]].is_fact() && program.rules[p.rules[0]].is_ground();
        return std::tuple<int, std::size_t>{fact ? 1 : 2, p.rules.front()};
    };
    auto later = [&](std::size_t a, std::size_t b) { return key(a) > key(b); };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
    for (std::size_t c = 0; c < count; ++c)
        if (indegree[c] == 0) ready.push(c);
    std::vector<Component> order;
    order.reserve(count);
    while (!ready.empty()) {
        auto c = ready.top();
        ready.pop();
        for (auto w : next[c])
            if (--indegree[w] == 0) ready.push(w);
        std::sort(parts[c].rules.begin(), parts[c].rules.end());
        order.push_back(std::move(parts[c]));
    }
    return order;
}

namespace {

constexpr SymbolId unbound = ~SymbolId{0};

struct Slot {
    bool     variable{false};
    SymbolId value{0};  // variable index or constant symbol
};

struct CompiledAtom {
    SymbolId          predicate{0};
    std::vector<Slot> args;
};

struct CompiledComparison {
    Slot  left, right;
    CmpOp op{CmpOp::eq};
};

struct CompiledRule {
    std::vector<CompiledAtom>       head, pos, neg;
    std::vector<CompiledComparison> comparisons;
    std::vector<std::string>        variables;
    std::vector<std::size_t>        order;         // join order over pos
    std::vector<std::vector<std::size_t>> checks;  // comparisons decidable after step i
    std::vector<std::size_t>        ground_checks; // comparisons without variables
};

CompiledRule compile(const Rule& rule, AtomTable& table) {
    CompiledRule c;
    auto vars = vars_of(rule);
    c.variables.assign(vars.begin(), vars.end());
    auto slot = [&](const Term& t) {
        if (t.is_variable()) {
            auto it = std::lower_bound(c.variables.begin(), c.variables.end(), t.name);
            return Slot{true, static_cast<SymbolId>(it - c.variables.begin())};
        }
        return Slot{false, table.symbol(t.name)};
    };
    auto atom = [&](const Atom& a) {
        CompiledAtom out{table.symbol(a.predicate), {}};
        for (const auto& t : a.args) out.args.push_back(slot(t));
        return out;
    };
    for (const auto& a : rule.head) c.head.push_back(atom(a));
    for (const auto& a : rule.body_pos) c.pos.push_back(atom(a));
    for (const auto& a : rule.body_neg) c.neg.push_back(atom(a));
    for (const auto& cmp : rule.comparisons) c.comparisons.push_back({slot(cmp.left), slot(cmp.right), cmp.op});

    // Greedy join order: most already-bound arguments first, then fewest fresh variables.
    std::vector<char> bound(c.variables.size(), 0), used(c.pos.size(), 0);
    for (std::size_t step = 0; step < c.pos.size(); ++step) {
        std::size_t best = c.pos.size();
        std::tuple<int, int> best_key{-1, 0};
        for (std::size_t i = 0; i < c.pos.size(); ++i) {
            if (used[i]) continue;
            int b = 0, fresh = 0;
            for (const auto& s : c.pos[i].args) {
                if (!s.variable || bound[s.value]) ++b;
                else ++fresh;
            }
            std::tuple<int, int> k{b, -fresh};
            if (best == c.pos.size() || k > best_key) {
                best = i;
                best_key = k;
            }
        }
        used[best] = 1;
        c.order.push_back(best);
        for (const auto& s : c.pos[best].args)
            if (s.variable) bound[s.value] = 1;
    }
    // Attach every comparison to the first step at which both sides are bound.
    c.checks.resize(c.pos.size());
    std::vector<std::size_t> bound_at(c.variables.size(), 0);
    for (std::size_t step = 0; step < c.order.size(); ++step)
        for (const auto& s : c.pos[c.order[step]].args)
            if (s.variable && bound_at[s.value] == 0) bound_at[s.value] = step + 1;
    for (std::size_t i = 0; i < c.comparisons.size(); ++i) {
        std::size_t at = 0;
        for (const auto* s : {&c.comparisons[i].left, &c.comparisons[i].right})
            if (s->variable) at = std::max(at, bound_at[s->value]);
        if (at == 0) c.ground_checks.push_back(i);
        else c.checks[at - 1].push_back(i);
    }
    return c;
}

SymbolId slot_value(const Slot& s, const std::vector<SymbolId>& values) {
    return s.variable ? values[s.value] : s.value;
}

struct SymbolsHash {
    std::size_t operator()(const std::vector<SymbolId>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto s : v) h = (h ^ s) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

class Engine {
public:
    Engine(GroundProgram& out, const ConstantSet* domain, const Deadline& deadline)
        : out_(out), table_(out.table()), deadline_(deadline) {
        if (domain) {
            restricted_ = true;
            for (const auto& c : *domain) {
                auto s = table_.symbol(c);
                if (allowed_.size() <= s) allowed_.resize(s + 1, 0);
                allowed_[s] = 1;
            }
        }
    }

    void run(const Program& program) {
        auto graph = build_predicate_rule_graph(program);
        auto order = scc_topological_order(graph, program);
        for (const auto& part : order) {
            deadline_.check("grounding");
            if (!part.rules.empty()) ground_component(program, part);
            for (const auto& sig : part.predicates) mark_done(table_.symbol(sig.name));
        }
        finish();
    }

    // Joins body atoms of a compiled rule against the possible atoms.
    template <class F> void match(const CompiledRule& rule, F&& on_match) {
        for (auto i : rule.ground_checks)
            if (!holds(rule.comparisons[i], {})) return;
        std::vector<SymbolId> values(rule.variables.size(), unbound);
        join(rule, 0, values, on_match);
    }

    void add_possible(AtomId a) {
        ensure(a);
        if (possible_[a]) return;
        possible_[a] = 1;
        auto& idx = index_[table_.predicate(a)];
        idx.all.push_back(a);
        auto args = table_.args(a);
        if (idx.by_position.size() < args.size()) idx.by_position.resize(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) idx.by_position[i][args[i]].push_back(a);
    }

private:
    struct PredicateIndex {
        std::vector<AtomId> all;
        std::vector<std::unordered_map<SymbolId, std::vector<AtomId>>> by_position;
    };

    void ensure(AtomId a) {
        if (possible_.size() <= a) {
            possible_.resize(std::max<std::size_t>(a + 1, possible_.size() * 2), 0);
            true_.resize(possible_.size(), 0);
        }
    }
    bool is_true(AtomId a) const { return a < true_.size() && true_[a]; }
    bool is_possible(AtomId a) const { return a < possible_.size() && possible_[a]; }
    void add_true(AtomId a) {
        add_possible(a);
        true_[a] = 1;
    }
    void mark_done(SymbolId p) {
        if (done_.size() <= p) done_.resize(p + 1, 0);
        done_[p] = 1;
    }
    bool done(SymbolId p) const { return p < done_.size() && done_[p]; }
    bool allowed(SymbolId s) const { return !restricted_ || (s < allowed_.size() && allowed_[s]); }

    bool holds(const CompiledComparison& c, const std::vector<SymbolId>& values) const {
        return compare_constants(table_.name(slot_value(c.left, values)), c.op, table_.name(slot_value(c.right, values)));
    }

    template <class F>
    void join(const CompiledRule& rule, std::size_t step, std::vector<SymbolId>& values, F& on_match) {
        if (step == rule.order.size()) {
            on_match(values);
            return;
        }
        if ((++ticks_ & 0xfff) == 0) deadline_.check("grounding");
        const auto& atom = rule.pos[rule.order[step]];
        auto it = index_.find(atom.predicate);
        if (it == index_.end()) return;
        const auto& idx = it->second;
        const std::vector<AtomId>* candidates = &idx.all;
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            auto v = slot_value(atom.args[i], values);
            if (v == unbound) continue;
            if (i >= idx.by_position.size()) return;
            auto found = idx.by_position[i].find(v);
            if (found == idx.by_position[i].end()) return;
            if (found->second.size() < candidates->size()) candidates = &found->second;
        }
        std::vector<std::size_t> fresh;
        const std::size_t        n = candidates->size();  // atoms added meanwhile wait for the next pass
        for (std::size_t k = 0; k < n; ++k) {
            AtomId a    = (*candidates)[k];
            auto   args = table_.args(a);
            if (args.size() != atom.args.size()) continue;
            bool ok = true;
            fresh.clear();
            for (std::size_t i = 0; i < args.size() && ok; ++i) {
                const auto& s = atom.args[i];
                if (!s.variable) {
                    ok = s.value == args[i];
                } else if (values[s.value] == unbound) {
                    if (!allowed(args[i])) ok = false;
                    else {
                        values[s.value] = args[i];
                        fresh.push_back(s.value);
                    }
                } else {
                    ok = values[s.value] == args[i];
                }
            }
            if (ok)
                for (auto ci : rule.checks[step])
                    if (!holds(rule.comparisons[ci], values)) {
                        ok = false;
                        break;
                    }
            if (ok) join(rule, step + 1, values, on_match);
            for (auto v : fresh) values[v] = unbound;
            // the candidate vector may have been reallocated by on_match
            if (n > candidates->size()) break;
        }
    }

    AtomId instantiate(const CompiledAtom& a, const std::vector<SymbolId>& values) {
        scratch_.clear();
        for (const auto& s : a.args) scratch_.push_back(slot_value(s, values));
        return table_.intern(a.predicate, scratch_);
    }

    // Returns true when a new ground rule instance was considered.
    bool emit(const CompiledRule& rule, const std::vector<SymbolId>& values) {
        GroundRule g;
        for (const auto& a : rule.neg) {
            auto id = instantiate(a, values);
            if (is_true(id)) return true;
            if (!done(a.predicate) || is_possible(id)) g.neg.push_back(id);
        }
        for (const auto& a : rule.head) g.head.push_back(instantiate(a, values));
        if (g.head.size() == 1 && is_true(g.head[0])) return true;
        for (const auto& a : rule.pos) {
            auto id = instantiate(a, values);
            if (!is_true(id)) g.pos.push_back(id);
        }
        auto dedupe = [](std::vector<AtomId>& v) {
            std::vector<AtomId> kept;
            for (auto a : v)
                if (std::find(kept.begin(), kept.end(), a) == kept.end()) kept.push_back(a);
            v.swap(kept);
        };
        dedupe(g.head);
        dedupe(g.pos);
        dedupe(g.neg);
        for (auto h : g.head) add_possible(h);
        if (g.head.size() == 1 && g.body_empty()) add_true(g.head[0]);
        out_.rules.push_back(std::move(g));
        return true;
    }

    void ground_component(const Program& program, const Component& part) {
        if (part.rules.size() == 1 && program.rules[part.rules[0]].is_fact() &&
            program.rules[part.rules[0]].is_ground()) {
            auto id = table_.intern(program.rules[part.rules[0]].head[0]);
            out_.rules.push_back(GroundRule{{id}, {}, {}});
            add_true(id);
            return;
        }
        std::vector<CompiledRule> rules;
        for (auto i : part.rules) rules.push_back(compile(program.rules[i], table_));

        std::unordered_set<SymbolId> own;
        for (const auto& sig : part.predicates) own.insert(table_.symbol(sig.name));
        bool recursive = false;
        for (const auto& r : rules)
            for (const auto& a : r.pos)
                if (own.count(a.predicate)) recursive = true;

        std::vector<std::unordered_set<std::vector<SymbolId>, SymbolsHash>> seen(rules.size());
        std::vector<std::vector<SymbolId>> found;
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t i = 0; i < rules.size(); ++i) {
                found.clear();
                match(rules[i], [&](const std::vector<SymbolId>& values) { found.push_back(values); });
                for (auto& values : found) {
                    if (recursive && !seen[i].insert(values).second) continue;
                    progress |= emit(rules[i], values);
                }
            }
            if (!recursive) break;
        }
    }

    void finish() {
        std::vector<AtomId> t, p;
        for (AtomId a = 0; a < possible_.size(); ++a) {
            if (possible_[a]) p.push_back(a);
            if (true_[a]) t.push_back(a);
        }
        out_.true_atoms = std::move(t);
        out_.possible_atoms = std::move(p);
    }

    GroundProgram&   out_;
    AtomTable&       table_;
    const Deadline&  deadline_;
    bool             restricted_{false};
    std::vector<char> allowed_;
    std::vector<char> possible_, true_, done_;
    std::unordered_map<SymbolId, PredicateIndex> index_;
    std::vector<SymbolId> scratch_;
    std::size_t           ticks_{0};
};

GroundProgram run_grounding(const Program& program, const ConstantSet* domain, const GroundOptions& options) {
    GroundProgram out(options.table ? options.table : make_atom_table());
    Engine engine(out, domain, options.deadline);
    try {
        engine.run(program);
    } catch (const TimeoutError&) {
        out.complete = false;
    }
    return out;
}

} // namespace

std::vector<Substitution> good_matches(const std::vector<Atom>& body, const std::vector<Atom>& facts) {
    GroundProgram scratch;
    Engine        engine(scratch, nullptr, Deadline{});
    for (const auto& f : facts) engine.add_possible(scratch.table().intern(f));
    Rule r;
    r.body_pos = body;
    auto compiled = compile(r, scratch.table());
    std::vector<Substitution> out;
    engine.match(compiled, [&](const std::vector<SymbolId>& values) {
        Substitution s;
        for (std::size_t i = 0; i < values.size(); ++i) s[compiled.variables[i]] = scratch.table().name(values[i]);
        out.push_back(std::move(s));
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GroundProgram ground(const Program& program, const GroundOptions& options) {
    return run_grounding(program, nullptr, options);
}

GroundProgram restrict_ground(const Program& program, const ConstantSet& domain, const GroundOptions& options) {
    auto hu = herbrand_universe(program);
    for (const auto& c : domain)
        if (!hu.count(c)) throw DomainError("constant " + c + " is not in the Herbrand universe");
    return run_grounding(program, &domain, options);
}

GroundProgram full_instantiation(const Program& program, const ConstantSet& domain, const GroundOptions& options) {
    GroundProgram out(options.table ? options.table : make_atom_table());
    auto& table = out.table();
    std::vector<SymbolId> dom;
    for (const auto& c : domain) dom.push_back(table.symbol(c));
    std::size_t ticks = 0;
    try {
        for (const auto& rule : program.rules) {
            auto c = compile(rule, table);
            std::vector<SymbolId> values(c.variables.size(), 0);
            if (!c.variables.empty() && dom.empty()) continue;
            std::vector<std::size_t> digit(c.variables.size(), 0);
            for (std::size_t i = 0; i < values.size(); ++i) values[i] = dom[0];
            while (true) {
                if ((++ticks & 0xfff) == 0) options.deadline.check("instantiation");
                bool keep = std::all_of(c.comparisons.begin(), c.comparisons.end(), [&](const CompiledComparison& cmp) {
                    return compare_constants(table.name(slot_value(cmp.left, values)), cmp.op,
                                             table.name(slot_value(cmp.right, values)));
                });
                if (keep) {
                    GroundRule g;
                    auto inst = [&](const CompiledAtom& a) {
                        std::vector<SymbolId> args;
                        for (const auto& s : a.args) args.push_back(slot_value(s, values));
                        return table.intern(a.predicate, args);
                    };
                    auto push = [&](std::vector<AtomId>& part, AtomId id) {
                        if (std::find(part.begin(), part.end(), id) == part.end()) part.push_back(id);
                    };
                    for (const auto& a : c.head) push(g.head, inst(a));
                    for (const auto& a : c.pos) push(g.pos, inst(a));
                    for (const auto& a : c.neg) push(g.neg, inst(a));
                    out.rules.push_back(std::move(g));
                }
                std::size_t i = 0;
                for (; i < digit.size(); ++i) {
                    if (++digit[i] < dom.size()) {
                        values[i] = dom[digit[i]];
                        break;
                    }
                    digit[i] = 0;
                    values[i] = dom[0];
                }
                if (i == digit.size()) break;
            }
        }
    } catch (const TimeoutError&) {
        out.complete = false;
    }
    return out;
}

} // namespace dimin
