#include "oracle.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace testsupport {

using namespace dimin;

namespace {

bool is_int(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    return i < s.size() && std::all_of(s.begin() + long(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool less_than(const std::string& a, const std::string& b) {
    bool ia = is_int(a), ib = is_int(b);
    if (ia && ib) return std::stoll(a) < std::stoll(b);
    if (ia != ib) return ia;
    return a < b;
}

bool holds(const std::string& a, CmpOp op, const std::string& b) {
    switch (op) {
    case CmpOp::eq: return a == b;
    case CmpOp::ne: return a != b;
    case CmpOp::lt: return less_than(a, b);
    case CmpOp::le: return a == b || less_than(a, b);
    case CmpOp::gt: return less_than(b, a);
    case CmpOp::ge: return a == b || less_than(b, a);
    }
    return false;
}

std::string render(const Atom& atom, const std::map<std::string, std::string>& sub) {
    std::string out = atom.predicate;
    if (atom.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) out += ',';
        const auto& t = atom.args[i];
        out += t.is_variable() ? sub.at(t.name) : t.name;
    }
    return out + ')';
}

std::string value(const Term& t, const std::map<std::string, std::string>& sub) {
    return t.is_variable() ? sub.at(t.name) : t.name;
}

struct Indexed {
    std::vector<std::string> atoms;
    std::map<std::string, int> index;
    struct R {
        std::uint64_t head{0}, pos{0}, neg{0};
    };
    std::vector<R> rules;

    int id(const std::string& a) {
        auto [it, fresh] = index.emplace(a, int(atoms.size()));
        if (fresh) atoms.push_back(a);
        return it->second;
    }
};

Indexed index_rules(const std::vector<TextRule>& rules, bool heads_first) {
    Indexed ix;
    if (heads_first)
        for (const auto& r : rules)
            for (const auto& a : r.head) ix.id(a);
    for (const auto& r : rules) {
        for (const auto& a : r.head) ix.id(a);
        for (const auto& a : r.pos) ix.id(a);
        for (const auto& a : r.neg) ix.id(a);
    }
    if (ix.atoms.size() > 63) throw std::runtime_error("oracle: too many atoms");
    for (const auto& r : rules) {
        Indexed::R m;
        for (const auto& a : r.head) m.head |= std::uint64_t{1} << ix.index[a];
        for (const auto& a : r.pos) m.pos |= std::uint64_t{1} << ix.index[a];
        for (const auto& a : r.neg) m.neg |= std::uint64_t{1} << ix.index[a];
        ix.rules.push_back(m);
    }
    return ix;
}

AtomSet decode(const Indexed& ix, std::uint64_t mask) {
    AtomSet out;
    for (std::size_t i = 0; i < ix.atoms.size(); ++i)
        if (mask >> i & 1) out.insert(ix.atoms[i]);
    return out;
}

std::uint64_t encode(const Indexed& ix, const AtomSet& set) {
    std::uint64_t m = 0;
    for (const auto& a : set) {
        auto it = ix.index.find(a);
        if (it == ix.index.end()) continue;
        m |= std::uint64_t{1} << it->second;
    }
    return m;
}

bool body_true(const Indexed::R& r, std::uint64_t s) { return (r.pos & ~s) == 0 && (r.neg & s) == 0; }

bool satisfied(const Indexed::R& r, std::uint64_t s) { return !body_true(r, s) || (r.head & s) != 0; }

// Model of the reduct relative to `reduct_of`.
bool reduct_model(const Indexed& ix, std::uint64_t reduct_of, std::uint64_t s) {
    for (const auto& r : ix.rules) {
        if (r.neg & reduct_of) continue;
        if ((r.pos & ~s) == 0 && (r.head & s) == 0) return false;
    }
    return true;
}

bool strongly_connected(const Indexed& ix, std::uint64_t set) {
    if (!set) return false;
    int start = __builtin_ctzll(set);
    auto reach = [&](bool forward) {
        std::uint64_t seen = std::uint64_t{1} << start, frontier = seen;
        while (frontier) {
            std::uint64_t next = 0;
            for (const auto& r : ix.rules) {
                std::uint64_t from = forward ? r.head : r.pos;
                std::uint64_t to = forward ? r.pos : r.head;
                if (from & frontier) next |= to & set;
            }
            next &= ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    };
    return reach(true) == set && reach(false) == set;
}

} // namespace

std::vector<TextRule> instantiate(const Program& program, const ConstantSet& domain) {
    std::vector<TextRule> out;
    std::vector<std::string> dom(domain.begin(), domain.end());
    for (const auto& rule : program.rules) {
        auto vs = vars_of(rule);
        std::vector<std::string> names(vs.begin(), vs.end());
        std::map<std::string, std::string> sub;
        std::function<void(std::size_t)> assign = [&](std::size_t k) {
            if (k == names.size()) {
                for (const auto& c : rule.comparisons)
                    if (!holds(value(c.left, sub), c.op, value(c.right, sub))) return;
                TextRule t;
                for (const auto& a : rule.head) t.head.push_back(render(a, sub));
                for (const auto& a : rule.body_pos) t.pos.push_back(render(a, sub));
                for (const auto& a : rule.body_neg) t.neg.push_back(render(a, sub));
                out.push_back(std::move(t));
                return;
            }
            for (const auto& c : dom) {
                sub[names[k]] = c;
                assign(k + 1);
            }
        };
        assign(0);
    }
    return out;
}

AnswerSets brute_answer_sets(const std::vector<TextRule>& rules, std::size_t max_atoms) {
    auto ix = index_rules(rules, true);
    std::uint64_t heads = 0;
    for (const auto& r : ix.rules) heads |= r.head;
    std::size_t n = std::size_t(__builtin_popcountll(heads));
    if (n > max_atoms) throw std::runtime_error("oracle: too many head atoms");
    AnswerSets out;
    // Head atoms occupy the lowest indices.
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if (!std::all_of(ix.rules.begin(), ix.rules.end(), [&](const auto& r) { return satisfied(r, s); })) continue;
        bool minimal = true;
        for (std::uint64_t sub = (s - 1) & s;; sub = (sub - 1) & s) {
            if (sub != s && reduct_model(ix, s, sub)) {
                minimal = false;
                break;
            }
            if (sub == 0) break;
        }
        if (minimal) out.insert(decode(ix, s));
    }
    return out;
}

std::vector<TextRule> to_text_rules(const GroundProgram& program) {
    std::vector<TextRule> out;
    const auto& t = program.table();
    for (const auto& r : program.rules) {
        TextRule x;
        for (auto a : r.head) x.head.push_back(t.to_string(a));
        for (auto a : r.pos) x.pos.push_back(t.to_string(a));
        for (auto a : r.neg) x.neg.push_back(t.to_string(a));
        out.push_back(std::move(x));
    }
    return out;
}

AtomSet to_atom_set(const AtomTable& table, const Interpretation& set) {
    AtomSet out;
    for (auto a : set) out.insert(table.to_string(a));
    return out;
}

AnswerSets to_answer_sets(const AtomTable& table, const std::vector<Interpretation>& sets) {
    AnswerSets out;
    for (const auto& s : sets) out.insert(to_atom_set(table, s));
    return out;
}

std::set<AtomSet> brute_loops(const std::vector<TextRule>& rules) {
    auto ix = index_rules(rules, false);
    std::size_t n = ix.atoms.size();
    if (n > 16) throw std::runtime_error("oracle: too many atoms for loop enumeration");
    std::set<AtomSet> out;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s)
        if (__builtin_popcountll(s) == 1 || strongly_connected(ix, s)) out.insert(decode(ix, s));
    return out;
}

std::set<AtomSet> brute_elementary_loops(const std::vector<TextRule>& rules) {
    auto ix = index_rules(rules, false);
    std::size_t n = ix.atoms.size();
    if (n > 16) throw std::runtime_error("oracle: too many atoms for loop enumeration");
    auto is_loop = [&](std::uint64_t s) { return __builtin_popcountll(s) == 1 || strongly_connected(ix, s); };
    std::set<AtomSet> out;
    for (std::uint64_t l = 1; l < (std::uint64_t{1} << n); ++l) {
        if (!is_loop(l)) continue;
        bool elementary = true;
        for (std::uint64_t sub = (l - 1) & l; sub && elementary; sub = (sub - 1) & l) {
            if (!is_loop(sub)) continue;
            bool supported = std::any_of(ix.rules.begin(), ix.rules.end(), [&](const auto& r) {
                return (r.head & sub) && !(r.pos & sub) && (r.pos & l);
            });
            elementary = supported;
        }
        if (elementary) out.insert(decode(ix, l));
    }
    return out;
}

bool brute_loop_formula(const std::vector<TextRule>& rules, const AtomSet& loop, const AtomSet& candidate) {
    if (!std::includes(candidate.begin(), candidate.end(), loop.begin(), loop.end())) return true;
    auto ix = index_rules(rules, false);
    auto l = encode(ix, loop), s = encode(ix, candidate);
    return std::any_of(ix.rules.begin(), ix.rules.end(),
                       [&](const auto& r) { return (r.head & l) && !(r.pos & l) && body_true(r, s); });
}

bool brute_is_model(const std::vector<TextRule>& rules, const AtomSet& candidate) {
    auto ix = index_rules(rules, false);
    auto s = encode(ix, candidate);
    return std::all_of(ix.rules.begin(), ix.rules.end(), [&](const auto& r) { return satisfied(r, s); });
}

std::string show(const AnswerSets& sets) {
    std::ostringstream out;
    for (const auto& s : sets) {
        out << '{';
        const char* sep = "";
        for (const auto& a : s) out << sep << a, sep = ", ";
        out << "}\n";
    }
    return out.str();
}

} // namespace testsupport
