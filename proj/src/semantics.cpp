#include "dimin/semantics.h"

#include "dimin/error.h"
#include "dimin/graph.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>

namespace dimin {

GroundProgram gl_reduct(const GroundProgram& program, const Interpretation& candidate) {
    GroundProgram out(program.table_ptr());
    for (const auto& r : program.rules) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return contains(candidate, a); })) continue;
        out.rules.push_back(GroundRule{r.head, r.pos, {}});
    }
    return out;
}

Interpretation least_model(const GroundProgram& program) {
    // Counter-based forward chaining.
    std::unordered_map<AtomId, std::vector<std::size_t>> watchers;
    std::vector<std::size_t> missing(program.rules.size());
    std::vector<AtomId>      queue;
    std::unordered_map<AtomId, char> derived;
    auto derive = [&](AtomId a) {
        if (derived.emplace(a, 1).second) queue.push_back(a);
    };
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const auto& r = program.rules[i];
        if (r.head.size() > 1) throw NotNormalError("least model requires a normal program");
        if (!r.neg.empty()) throw Error("least model requires a positive program");
        missing[i] = r.pos.size();
        for (auto a : r.pos) watchers[a].push_back(i);
        if (missing[i] == 0 && !r.head.empty()) derive(r.head[0]);
    }
    while (!queue.empty()) {
        auto a = queue.back();
        queue.pop_back();
        auto it = watchers.find(a);
        if (it == watchers.end()) continue;
        for (auto i : it->second)
            if (--missing[i] == 0 && !program.rules[i].head.empty()) derive(program.rules[i].head[0]);
    }
    std::vector<AtomId> out;
    for (const auto& [a, _] : derived) out.push_back(a);
    return make_interpretation(std::move(out));
}

namespace {

// Bit-mask view of a program over its head atoms, for the enumeration oracles.
struct MaskProgram {
    Interpretation heads;
    struct Rule {
        std::uint64_t head{0}, pos{0}, neg{0};
    };
    std::vector<Rule> rules;

    MaskProgram(const GroundProgram& program, std::size_t limit, const char* what) {
        heads = program.head_atoms();
        if (heads.size() > limit || heads.size() > 63) throw SizeGuardError(what, heads.size(), std::min<std::size_t>(limit, 63));
        auto bit = [&](AtomId a) -> std::int64_t {
            auto it = std::lower_bound(heads.begin(), heads.end(), a);
            return it != heads.end() && *it == a ? std::int64_t{1} << (it - heads.begin()) : -1;
        };
        for (const auto& r : program.rules) {
            Rule m;
            bool possible = true;
            for (auto a : r.head) m.head |= static_cast<std::uint64_t>(bit(a));
            for (auto a : r.pos) {
                auto b = bit(a);
                if (b < 0) possible = false;  // never derivable, body can't hold
                else m.pos |= static_cast<std::uint64_t>(b);
            }
            for (auto a : r.neg) {
                auto b = bit(a);
                if (b >= 0) m.neg |= static_cast<std::uint64_t>(b);
            }
            if (possible) rules.push_back(m);
        }
    }

    // Model of the program where rules blocked by `reduct_of` are dropped and negation ignored.
    bool model(std::uint64_t set, std::uint64_t reduct_of, bool use_neg) const {
        for (const auto& r : rules) {
            if (r.neg & reduct_of) continue;
            if (use_neg && (r.neg & set)) continue;
            if ((r.pos & set) == r.pos && !(r.head & set)) return false;
        }
        return true;
    }

    Interpretation decode(std::uint64_t set) const {
        Interpretation out;
        for (std::size_t i = 0; i < heads.size(); ++i)
            if (set >> i & 1) out.push_back(heads[i]);
        return out;
    }
};

} // namespace

std::vector<Interpretation> minimal_models(const GroundProgram& program, std::size_t limit) {
    if (!program.is_positive()) throw Error("minimal models are defined here for positive programs only");
    MaskProgram m(program, limit, "minimal_models");
    std::vector<std::uint64_t> models;
    const std::uint64_t        end = std::uint64_t{1} << m.heads.size();
    for (std::uint64_t s = 0; s < end; ++s)
        if (m.model(s, 0, false)) models.push_back(s);
    std::stable_sort(models.begin(), models.end(),
                     [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::uint64_t> minimal;
    for (auto s : models)
        if (std::none_of(minimal.begin(), minimal.end(), [&](std::uint64_t k) { return (k & s) == k; }))
            minimal.push_back(s);
    std::vector<Interpretation> out;
    for (auto s : minimal) out.push_back(m.decode(s));
    sort_canonical(program.table(), out);
    return out;
}

std::vector<Interpretation> answer_sets_by_definition(const GroundProgram& program, std::size_t limit) {
    MaskProgram m(program, limit, "answer_sets_by_definition");
    std::vector<Interpretation> out;
    const std::uint64_t end = std::uint64_t{1} << m.heads.size();
    for (std::uint64_t s = 0; s < end; ++s) {
        if (!m.model(s, s, false)) continue;  // S must be a model of its reduct
        bool minimal = true;
        // proper subsets of s
        for (std::uint64_t sub = (s - 1) & s;; sub = (sub - 1) & s) {
            if (sub != s && m.model(sub, s, false)) {
                minimal = false;
                break;
            }
            if (sub == 0) break;
        }
        if (s == 0) minimal = true;
        if (minimal) out.push_back(m.decode(s));
    }
    sort_canonical(program.table(), out);
    return out;
}

void sort_canonical(const AtomTable& table, std::vector<Interpretation>& sets) {
    std::vector<std::pair<std::vector<std::string>, Interpretation>> keyed;
    keyed.reserve(sets.size());
    for (auto& s : sets) keyed.emplace_back(canonical_atoms(table, s), std::move(s));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    sets.clear();
    for (auto& [_, s] : keyed) sets.push_back(std::move(s));
}

namespace {

enum Value : signed char { unknown = 0, yes = 1, no = -1 };

// Tiny DPLL used to test minimality of disjunctive candidates.
bool satisfiable(std::vector<std::vector<int>> clauses, std::vector<signed char>& value) {
    while (true) {
        bool changed = false;
        for (const auto& c : clauses) {
            int open = 0, last = 0;
            bool sat = false;
            for (int lit : c) {
                auto v = value[static_cast<std::size_t>(std::abs(lit))];
                if (v == unknown) {
                    ++open;
                    last = lit;
                } else if ((v == yes) == (lit > 0)) {
                    sat = true;
                    break;
                }
            }
            if (sat) continue;
            if (open == 0) return false;
            if (open == 1) {
                value[static_cast<std::size_t>(std::abs(last))] = last > 0 ? yes : no;
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (std::size_t v = 1; v < value.size(); ++v) {
        if (value[v] != unknown) continue;
        for (signed char choice : {no, yes}) {
            auto copy = value;
            copy[v] = choice;
            if (satisfiable(clauses, copy)) return true;
        }
        return false;
    }
    return true;
}

class Search {
public:
    enum class Mode { stable, extension };

    Search(const GroundProgram& program, Mode mode, const Interpretation& assumed, const SolveOptions& options)
        : program_(program), mode_(mode), options_(options) {
        auto local = [&](AtomId a) {
            auto [it, fresh] = index_.emplace(a, static_cast<std::uint32_t>(atoms_.size()));
            if (fresh) atoms_.push_back(a);
            return it->second;
        };
        for (auto a : program.atoms()) local(a);
        for (auto a : assumed) local(a);
        const auto n = atoms_.size();
        value_.assign(n, unknown);
        assumed_.assign(n, 0);
        for (auto a : assumed) assumed_[index_[a]] = 1;
        head_of_.resize(n);
        pos_in_.resize(n);
        neg_in_.resize(n);
        supports_.resize(n);
        for (std::size_t i = 0; i < program.rules.size(); ++i) {
            const auto& r = program.rules[i];
            Rule lr;
            for (auto a : r.head) lr.head.push_back(index_[a]);
            for (auto a : r.pos) lr.pos.push_back(index_[a]);
            for (auto a : r.neg) lr.neg.push_back(index_[a]);
            auto ri = static_cast<std::uint32_t>(rules_.size());
            for (auto a : lr.head) {
                head_of_[a].push_back(ri);
                if (std::find(lr.pos.begin(), lr.pos.end(), a) == lr.pos.end()) supports_[a].push_back(ri);
            }
            for (auto a : lr.pos) pos_in_[a].push_back(ri);
            for (auto a : lr.neg) neg_in_[a].push_back(ri);
            rules_.push_back(std::move(lr));
        }
        pos_open_.resize(rules_.size());
        neg_open_.resize(rules_.size());
        falsified_.assign(rules_.size(), 0);
        head_open_.resize(rules_.size());
        head_true_.assign(rules_.size(), 0);
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            pos_open_[r] = static_cast<std::uint32_t>(rules_[r].pos.size());
            neg_open_[r] = static_cast<std::uint32_t>(rules_[r].neg.size());
            head_open_[r] = static_cast<std::uint32_t>(rules_[r].head.size());
        }
        support_count_.resize(n);
        for (std::size_t a = 0; a < n; ++a) support_count_[a] = static_cast<std::uint32_t>(supports_[a].size());
        normal_ = program.is_normal();
        cyclic_ = has_positive_cycle();
    }

    // Calls on_model for each verified result until it returns false.
    void run(const std::function<bool(const Interpretation&)>& on_model) {
        on_model_ = &on_model;
        for (std::size_t a = 0; a < atoms_.size(); ++a)
            if (assumed_[a]) assign(static_cast<std::uint32_t>(a), yes);
        for (std::uint32_t r = 0; r < rules_.size(); ++r) rule_queue_.push_back(r);
        for (std::uint32_t a = 0; a < atoms_.size(); ++a) atom_queue_.push_back(a);
        if (!propagate()) return;
        std::size_t open = static_cast<std::size_t>(std::count(value_.begin(), value_.end(), unknown));
        if (open > options_.atom_limit) throw SizeGuardError("answer set search", open, options_.atom_limit);
        search(0);
    }

private:
    struct Rule {
        std::vector<std::uint32_t> head, pos, neg;
    };

    bool has_positive_cycle() const {
        Adjacency succ(atoms_.size());
        for (const auto& r : rules_)
            for (auto h : r.head)
                for (auto p : r.pos) succ[h].push_back(p);
        std::size_t count = 0;
        auto comp = strongly_connected(succ, count);
        if (count < atoms_.size()) return true;
        for (std::size_t a = 0; a < succ.size(); ++a)
            if (std::find(succ[a].begin(), succ[a].end(), a) != succ[a].end()) return true;
        return false;
    }

    void lose_support(std::uint32_t r) {
        const auto& rule = rules_[r];
        for (auto h : rule.head)
            if (std::find(rule.pos.begin(), rule.pos.end(), h) == rule.pos.end()) {
                --support_count_[h];
                atom_queue_.push_back(h);
            }
    }
    void regain_support(std::uint32_t r) {
        const auto& rule = rules_[r];
        for (auto h : rule.head)
            if (std::find(rule.pos.begin(), rule.pos.end(), h) == rule.pos.end()) ++support_count_[h];
    }

    void assign(std::uint32_t a, Value v) {
        value_[a] = v;
        trail_.push_back(a);
        for (auto r : pos_in_[a]) {
            if (v == yes) --pos_open_[r];
            else if (falsified_[r]++ == 0) lose_support(r);
            rule_queue_.push_back(r);
        }
        for (auto r : neg_in_[a]) {
            if (v == no) --neg_open_[r];
            else if (falsified_[r]++ == 0) lose_support(r);
            rule_queue_.push_back(r);
        }
        for (auto r : head_of_[a]) {
            if (v == no) --head_open_[r];
            else ++head_true_[r];
            rule_queue_.push_back(r);
        }
        atom_queue_.push_back(a);
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto a = trail_.back();
            trail_.pop_back();
            auto v = value_[a];
            for (auto r : pos_in_[a]) {
                if (v == yes) ++pos_open_[r];
                else if (--falsified_[r] == 0) regain_support(r);
            }
            for (auto r : neg_in_[a]) {
                if (v == no) ++neg_open_[r];
                else if (--falsified_[r] == 0) regain_support(r);
            }
            for (auto r : head_of_[a]) {
                if (v == no) ++head_open_[r];
                else --head_true_[r];
            }
            value_[a] = unknown;
        }
        rule_queue_.clear();
        atom_queue_.clear();
    }

    // Sets an atom, or reports a conflict when it already has the other value.
    bool force(std::uint32_t a, Value v) {
        if (value_[a] == v) return true;
        if (value_[a] != unknown) return false;
        assign(a, v);
        return true;
    }

    bool check_rule(std::uint32_t r) {
        if (falsified_[r] > 0 || head_true_[r] > 0) return true;
        const auto& rule = rules_[r];
        std::uint32_t open_body = pos_open_[r] + neg_open_[r];
        if (open_body == 0) {
            if (head_open_[r] == 0) return false;
            if (head_open_[r] == 1)
                for (auto h : rule.head)
                    if (value_[h] == unknown) return force(h, yes);
            return true;
        }
        if (head_open_[r] == 0 && open_body == 1) {
            for (auto p : rule.pos)
                if (value_[p] == unknown) return force(p, no);
            for (auto q : rule.neg)
                if (value_[q] == unknown) return force(q, yes);
        }
        return true;
    }

    bool check_atom(std::uint32_t a) {
        if (assumed_[a]) return true;
        if (support_count_[a] == 0) return force(a, no);
        if (value_[a] != yes || support_count_[a] != 1) return true;
        for (auto r : supports_[a]) {
            if (falsified_[r] > 0) continue;
            const auto& rule = rules_[r];
            for (auto p : rule.pos)
                if (!force(p, yes)) return false;
            for (auto q : rule.neg)
                if (!force(q, no)) return false;
            if (mode_ == Mode::stable)
                for (auto h : rule.head)
                    if (h != a && !force(h, no)) return false;
            return true;
        }
        return true;
    }

    // Atoms that cannot be derived from assumed atoms and external supports.
    bool unfounded() {
        std::vector<char>          founded(atoms_.size(), 0);
        std::vector<std::uint32_t> missing(rules_.size(), 0);
        std::vector<std::uint32_t> work;
        auto found = [&](std::uint32_t a) {
            if (founded[a] || value_[a] == no) return;
            founded[a] = 1;
            work.push_back(a);
        };
        for (std::uint32_t a = 0; a < atoms_.size(); ++a)
            if (assumed_[a]) found(a);
        for (std::uint32_t r = 0; r < rules_.size(); ++r) {
            if (falsified_[r] > 0) continue;
            missing[r] = static_cast<std::uint32_t>(rules_[r].pos.size());
            if (missing[r] == 0)
                for (auto h : rules_[r].head) found(h);
        }
        while (!work.empty()) {
            auto a = work.back();
            work.pop_back();
            for (auto r : pos_in_[a]) {
                if (falsified_[r] > 0) continue;
                if (--missing[r] == 0)
                    for (auto h : rules_[r].head) found(h);
            }
        }
        for (std::uint32_t a = 0; a < atoms_.size(); ++a)
            if (!founded[a] && !force(a, no)) return false;
        return true;
    }

    bool propagate() {
        while (true) {
            while (!rule_queue_.empty() || !atom_queue_.empty()) {
                if (!rule_queue_.empty()) {
                    auto r = rule_queue_.back();
                    rule_queue_.pop_back();
                    if (!check_rule(r)) return conflict();
                } else {
                    auto a = atom_queue_.back();
                    atom_queue_.pop_back();
                    if (!check_atom(a)) return conflict();
                }
            }
            if (!cyclic_) return true;
            auto before = trail_.size();
            if (!unfounded()) return conflict();
            if (trail_.size() == before) return true;
        }
    }

    bool conflict() {
        rule_queue_.clear();
        atom_queue_.clear();
        return false;
    }

    Interpretation collect(bool skip_assumed) const {
        std::vector<AtomId> out;
        for (std::size_t a = 0; a < atoms_.size(); ++a)
            if (value_[a] == yes && !(skip_assumed && assumed_[a])) out.push_back(atoms_[a]);
        return make_interpretation(std::move(out));
    }

    bool verify() const {
        for (std::size_t r = 0; r < rules_.size(); ++r)
            if (falsified_[r] == 0 && head_true_[r] == 0) return false;
        if (mode_ == Mode::extension) return true;  // unfounded() ran on the full assignment
        if (normal_) return least_model_matches();
        return minimal();
    }

    bool least_model_matches() const {
        std::vector<char>          derived(atoms_.size(), 0);
        std::vector<std::uint32_t> missing(rules_.size(), 0), work;
        for (std::uint32_t r = 0; r < rules_.size(); ++r) {
            const auto& rule = rules_[r];
            if (rule.head.empty()) continue;
            if (std::any_of(rule.neg.begin(), rule.neg.end(), [&](auto q) { return value_[q] == yes; })) {
                missing[r] = ~0u;
                continue;
            }
            missing[r] = static_cast<std::uint32_t>(rule.pos.size());
            if (missing[r] == 0 && !derived[rule.head[0]]) {
                derived[rule.head[0]] = 1;
                work.push_back(rule.head[0]);
            }
        }
        while (!work.empty()) {
            auto a = work.back();
            work.pop_back();
            for (auto r : pos_in_[a]) {
                if (missing[r] == ~0u || rules_[r].head.empty()) continue;
                if (--missing[r] == 0 && !derived[rules_[r].head[0]]) {
                    derived[rules_[r].head[0]] = 1;
                    work.push_back(rules_[r].head[0]);
                }
            }
        }
        for (std::size_t a = 0; a < atoms_.size(); ++a)
            if ((value_[a] == yes) != (derived[a] != 0)) return false;
        return true;
    }

    // No model of the reduct strictly inside the current true atoms.
    bool minimal() const {
        std::vector<int> var(atoms_.size(), 0);
        int              n = 0;
        for (std::size_t a = 0; a < atoms_.size(); ++a)
            if (value_[a] == yes) var[a] = ++n;
        if (n == 0) return true;
        std::vector<std::vector<int>> clauses;
        for (const auto& rule : rules_) {
            if (std::any_of(rule.neg.begin(), rule.neg.end(), [&](auto q) { return value_[q] == yes; })) continue;
            if (std::any_of(rule.pos.begin(), rule.pos.end(), [&](auto p) { return value_[p] != yes; })) continue;
            std::vector<int> c;
            for (auto p : rule.pos) c.push_back(-var[p]);
            for (auto h : rule.head)
                if (value_[h] == yes) c.push_back(var[h]);
            clauses.push_back(std::move(c));
        }
        std::vector<int> smaller;
        for (int v = 1; v <= n; ++v) smaller.push_back(-v);
        clauses.push_back(std::move(smaller));
        std::vector<signed char> value(static_cast<std::size_t>(n) + 1, unknown);
        return !satisfiable(std::move(clauses), value);
    }

    // Returns false once the caller asked to stop.
    bool search(std::size_t from) {
        options_.deadline.check("answer set search");
        while (from < value_.size() && value_[from] != unknown) ++from;
        if (from == value_.size()) {
            if (!verify()) return true;
            return (*on_model_)(collect(mode_ == Mode::extension));
        }
        auto a = static_cast<std::uint32_t>(from);
        for (Value v : {yes, no}) {
            auto mark = trail_.size();
            assign(a, v);
            bool go_on = true;
            if (propagate()) go_on = search(from + 1);
            undo(mark);
            if (!go_on) return false;
        }
        return true;
    }

    const GroundProgram& program_;
    Mode                 mode_;
    const SolveOptions&  options_;

    std::vector<AtomId>                        atoms_;
    std::unordered_map<AtomId, std::uint32_t> index_;
    std::vector<Rule>                          rules_;
    std::vector<std::vector<std::uint32_t>>    head_of_, pos_in_, neg_in_, supports_;

    std::vector<signed char>   value_;
    std::vector<char>          assumed_;
    std::vector<std::uint32_t> pos_open_, neg_open_, falsified_, head_open_, head_true_, support_count_;
    std::vector<std::uint32_t> trail_, rule_queue_, atom_queue_;
    bool                       normal_{true};
    bool                       cyclic_{false};

    const std::function<bool(const Interpretation&)>* on_model_{nullptr};
};

} // namespace

std::vector<Interpretation> answer_sets(const GroundProgram& program, const SolveOptions& options) {
    std::vector<Interpretation> out;
    Search search(program, Search::Mode::stable, {}, options);
    std::function<bool(const Interpretation&)> keep = [&](const Interpretation& s) {
        out.push_back(s);
        return options.max_models == 0 || out.size() < options.max_models;
    };
    search.run(keep);
    sort_canonical(program.table(), out);
    return out;
}

std::optional<Interpretation> find_loop_extension(const GroundProgram& program, const Interpretation& base,
                                                  const SolveOptions& options) {
    std::optional<Interpretation> out;
    Search search(program, Search::Mode::extension, base, options);
    std::function<bool(const Interpretation&)> keep = [&](const Interpretation& s) {
        out = s;
        return false;
    };
    search.run(keep);
    return out;
}

bool DependencyGraph::has_edge(AtomId from, AtomId to) const {
    auto it = successors.find(from);
    return it != successors.end() && std::binary_search(it->second.begin(), it->second.end(), to);
}

std::vector<Interpretation> DependencyGraph::components() const {
    Adjacency succ(atoms.size());
    auto local = [&](AtomId a) {
        return static_cast<std::size_t>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin());
    };
    for (const auto& [from, tos] : successors)
        for (auto to : tos) succ[local(from)].push_back(local(to));
    std::size_t count = 0;
    auto comp = strongly_connected(succ, count);
    std::vector<Interpretation> out(count);
    for (std::size_t i = 0; i < atoms.size(); ++i) out[comp[i]].push_back(atoms[i]);
    std::sort(out.begin(), out.end());
    return out;
}

DependencyGraph positive_dependency_graph(const GroundProgram& program) {
    DependencyGraph g;
    g.atoms = program.atoms();
    for (const auto& r : program.rules)
        for (auto h : r.head)
            for (auto p : r.pos) g.successors[h].push_back(p);
    for (auto& [_, tos] : g.successors) tos = make_interpretation(std::move(tos));
    return g;
}

namespace {

// Adjacency bit masks of a set of at most 63 atoms.
std::vector<std::uint64_t> local_masks(const Interpretation& set, const DependencyGraph& graph) {
    std::vector<std::uint64_t> adj(set.size(), 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto it = graph.successors.find(set[i]);
        if (it == graph.successors.end()) continue;
        for (std::size_t j = 0; j < set.size(); ++j)
            if (std::binary_search(it->second.begin(), it->second.end(), set[j])) adj[i] |= std::uint64_t{1} << j;
    }
    return adj;
}

std::uint64_t reach(std::uint64_t start, std::uint64_t within, const std::vector<std::uint64_t>& adj) {
    std::uint64_t seen = start, frontier = start;
    while (frontier) {
        std::uint64_t next = 0;
        for (auto f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        next &= within & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

bool connected_mask(std::uint64_t set, const std::vector<std::uint64_t>& fwd, const std::vector<std::uint64_t>& bwd) {
    if (!set) return false;
    std::uint64_t first = set & (~set + 1);
    return reach(first, set, fwd) == set && reach(first, set, bwd) == set;
}

std::vector<std::uint64_t> transpose(const std::vector<std::uint64_t>& adj) {
    std::vector<std::uint64_t> out(adj.size(), 0);
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (auto m = adj[i]; m; m &= m - 1) out[static_cast<std::size_t>(std::countr_zero(m))] |= std::uint64_t{1} << i;
    return out;
}

Interpretation decode(const Interpretation& set, std::uint64_t mask) {
    Interpretation out;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (mask >> i & 1) out.push_back(set[i]);
    return out;
}

void guard(const char* what, std::size_t size, std::size_t limit) {
    auto cap = std::min<std::size_t>(limit, 62);
    if (size > cap) throw SizeGuardError(what, size, cap);
}

// Loops contained in `set` (a set of atoms), as masks over it.
std::vector<std::uint64_t> loop_masks(const Interpretation& set, const DependencyGraph& graph, bool proper) {
    auto fwd = local_masks(set, graph);
    auto bwd = transpose(fwd);
    std::vector<std::uint64_t> out;
    const std::uint64_t        full = set.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << set.size()) - 1;
    for (std::uint64_t m = 1; m <= full && m != 0; ++m) {
        if (proper && m == full) break;
        if (std::has_single_bit(m) || connected_mask(m, fwd, bwd)) out.push_back(m);
    }
    return out;
}

bool meets(const std::vector<AtomId>& atoms, const Interpretation& set) {
    return std::any_of(atoms.begin(), atoms.end(), [&](AtomId a) { return contains(set, a); });
}

} // namespace

bool is_loop(const Interpretation& set, const DependencyGraph& graph) {
    if (set.empty()) return false;
    if (set.size() == 1) return contains(graph.atoms, set[0]);
    guard("is_loop", set.size(), 62);
    auto fwd = local_masks(set, graph);
    auto bwd = transpose(fwd);
    return connected_mask((std::uint64_t{1} << set.size()) - 1, fwd, bwd);
}

std::vector<Interpretation> loops(const GroundProgram& program, std::size_t limit) {
    auto graph = positive_dependency_graph(program);
    std::vector<Interpretation> out;
    for (const auto& comp : graph.components()) {
        guard("loops", comp.size(), limit);
        for (auto m : loop_masks(comp, graph, false)) out.push_back(decode(comp, m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

SupportSplit external_supports(const Interpretation& loop, const GroundProgram& program) {
    SupportSplit s;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const auto& r = program.rules[i];
        if (!meets(r.head, loop)) continue;
        (meets(r.pos, loop) ? s.internal : s.external).push_back(i);
    }
    return s;
}

LoopFormula loop_formula(const Interpretation& loop, const GroundProgram& program) {
    return {loop, external_supports(loop, program).external};
}

bool satisfies_loop_formula(const Interpretation& candidate, const Interpretation& loop, const GroundProgram& program) {
    if (!is_subset(loop, candidate)) return true;
    for (auto i : external_supports(loop, program).external) {
        const auto& r = program.rules[i];
        bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return contains(candidate, a); }) &&
                    std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return contains(candidate, a); });
        if (body) return true;
    }
    return false;
}

namespace {

bool elementary(const Interpretation& loop, const GroundProgram& program, const DependencyGraph& graph) {
    if (loop.size() <= 1) return true;
    // R+(L): head meets L and positive body meets L.
    std::vector<std::size_t> internal = external_supports(loop, program).internal;
    // Every strict sub-loop needs an external support that is internal to L;
    // otherwise its loop formula already implies the one of L.
    for (auto m : loop_masks(loop, graph, true)) {
        auto sub = decode(loop, m);
        bool supported = std::any_of(internal.begin(), internal.end(), [&](std::size_t i) {
            const auto& r = program.rules[i];
            return meets(r.head, sub) && !meets(r.pos, sub);
        });
        if (!supported) return false;
    }
    return true;
}

} // namespace

bool is_elementary_loop(const Interpretation& loop, const GroundProgram& program, std::size_t limit) {
    guard("is_elementary_loop", loop.size(), limit);
    return elementary(loop, program, positive_dependency_graph(program));
}

std::vector<Interpretation> elementary_loops(const GroundProgram& program, std::size_t limit) {
    auto graph = positive_dependency_graph(program);
    std::vector<Interpretation> out;
    for (const auto& comp : graph.components()) {
        guard("elementary_loops", comp.size(), limit);
        for (auto m : loop_masks(comp, graph, false)) {
            auto l = decode(comp, m);
            if (elementary(l, program, graph)) out.push_back(std::move(l));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dimin
