#include "dimin/ast.h"

#include "dimin/error.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dimin {

std::string Signature::to_string() const { return name + "/" + std::to_string(arity); }

Signature Signature::parse(std::string_view text) {
    auto slash = text.rfind('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size())
        throw Error("malformed predicate signature '" + std::string(text) + "'");
    std::uint32_t arity = 0;
    auto digits = text.substr(slash + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw Error("malformed arity in signature '" + std::string(text) + "'");
    return {std::string(text.substr(0, slash)), arity};
}

bool Atom::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string_view to_string(CmpOp op) noexcept {
    switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
    }
    return "?";
}

bool is_integer_constant(std::string_view name) noexcept {
    if (!name.empty() && name.front() == '-') name.remove_prefix(1);
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

namespace {

// Three-way comparison of integer literals of arbitrary length.
int compare_integers(std::string_view a, std::string_view b) {
    bool neg_a = a.front() == '-';
    bool neg_b = b.front() == '-';
    if (neg_a) a.remove_prefix(1);
    if (neg_b) b.remove_prefix(1);
    auto strip = [](std::string_view s) {
        while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
        return s;
    };
    a = strip(a);
    b = strip(b);
    if (a == "0") neg_a = false;
    if (b == "0") neg_b = false;
    if (neg_a != neg_b) return neg_a ? -1 : 1;
    int magnitude = a.size() != b.size() ? (a.size() < b.size() ? -1 : 1) : a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
    return neg_a ? -magnitude : magnitude;
}

int order_constants(std::string_view a, std::string_view b) {
    bool ia = is_integer_constant(a);
    bool ib = is_integer_constant(b);
    if (ia && ib) return compare_integers(a, b);
    if (ia != ib) return ia ? -1 : 1;
    int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

} // namespace

bool compare_constants(std::string_view lhs, CmpOp op, std::string_view rhs) {
    switch (op) {
    case CmpOp::eq: return lhs == rhs;
    case CmpOp::ne: return lhs != rhs;
    case CmpOp::lt: return order_constants(lhs, rhs) < 0;
    case CmpOp::le: return order_constants(lhs, rhs) <= 0;
    case CmpOp::gt: return order_constants(lhs, rhs) > 0;
    case CmpOp::ge: return order_constants(lhs, rhs) >= 0;
    }
    return false;
}

bool Rule::is_ground() const {
    auto ground = [](const Atom& a) { return a.is_ground(); };
    return std::all_of(head.begin(), head.end(), ground) && std::all_of(body_pos.begin(), body_pos.end(), ground) &&
           std::all_of(body_neg.begin(), body_neg.end(), ground) &&
           std::all_of(comparisons.begin(), comparisons.end(),
                       [](const Comparison& c) { return c.left.is_constant() && c.right.is_constant(); });
}

namespace {
void dedupe(std::vector<Atom>& atoms) {
    std::vector<Atom> kept;
    kept.reserve(atoms.size());
    for (auto& a : atoms)
        if (std::find(kept.begin(), kept.end(), a) == kept.end()) kept.push_back(std::move(a));
    atoms = std::move(kept);
}
} // namespace

void Rule::normalize() {
    dedupe(head);
    dedupe(body_pos);
    dedupe(body_neg);
}

SignatureSet Program::vocabulary() const {
    SignatureSet out;
    for (const auto& r : rules)
        for (const auto* part : {&r.head, &r.body_pos, &r.body_neg})
            for (const auto& a : *part) out.insert(a.signature());
    return out;
}

namespace {
void collect(const Term& t, VariableSet* vars, ConstantSet* consts) {
    if (t.is_variable()) {
        if (vars) vars->insert(t.name);
    } else if (consts) {
        consts->insert(t.name);
    }
}
void collect(const Atom& a, VariableSet* vars, ConstantSet* consts) {
    for (const auto& t : a.args) collect(t, vars, consts);
}
void collect(const Rule& r, VariableSet* vars, ConstantSet* consts) {
    for (const auto* part : {&r.head, &r.body_pos, &r.body_neg})
        for (const auto& a : *part) collect(a, vars, consts);
    for (const auto& c : r.comparisons) {
        collect(c.left, vars, consts);
        collect(c.right, vars, consts);
    }
}
} // namespace

VariableSet vars_of(const Atom& atom) { VariableSet v; collect(atom, &v, nullptr); return v; }
VariableSet vars_of(const Rule& rule) { VariableSet v; collect(rule, &v, nullptr); return v; }
VariableSet vars_of(const Program& program) {
    VariableSet v;
    for (const auto& r : program.rules) collect(r, &v, nullptr);
    return v;
}
ConstantSet consts_of(const Atom& atom) { ConstantSet c; collect(atom, nullptr, &c); return c; }
ConstantSet consts_of(const Rule& rule) { ConstantSet c; collect(rule, nullptr, &c); return c; }
ConstantSet consts_of(const Program& program) {
    ConstantSet c;
    for (const auto& r : program.rules) collect(r, nullptr, &c);
    return c;
}

ConstantSet herbrand_universe(const Program& program) {
    auto c = consts_of(program);
    if (c.empty()) c.insert(std::string(fresh_constant));
    return c;
}

void check_safety(const Rule& rule) {
    VariableSet bound;
    for (const auto& a : rule.body_pos) collect(a, &bound, nullptr);
    auto require = [&](const Term& t) {
        if (t.is_variable() && !bound.count(t.name)) throw SafetyError(t.name, rule.line, to_string(rule));
    };
    for (const auto* part : {&rule.head, &rule.body_neg})
        for (const auto& a : *part)
            for (const auto& t : a.args) require(t);
    for (const auto& c : rule.comparisons) {
        require(c.left);
        require(c.right);
    }
}

void validate(const Program& program) {
    std::map<std::string, std::uint32_t> arity;
    for (const auto& r : program.rules) {
        check_safety(r);
        for (const auto* part : {&r.head, &r.body_pos, &r.body_neg})
            for (const auto& a : *part) {
                auto [it, fresh] = arity.emplace(a.predicate, a.arity());
                if (!fresh && it->second != a.arity()) throw ArityError(a.predicate, it->second, a.arity());
            }
    }
}

std::string to_string(const Term& term) { return term.name; }

std::string to_string(const Atom& atom) {
    std::string out = atom.predicate;
    if (!atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i) out += ',';
            out += atom.args[i].name;
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Comparison& cmp) {
    std::string out = cmp.left.name;
    out += ' ';
    out += to_string(cmp.op);
    out += ' ';
    out += cmp.right.name;
    return out;
}

std::string to_string(const Rule& rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        if (i) out += " | ";
        out += to_string(rule.head[i]);
    }
    bool has_body = !rule.body_pos.empty() || !rule.body_neg.empty() || !rule.comparisons.empty();
    if (has_body || rule.head.empty()) {
        out += rule.head.empty() ? ":-" : " :-";
        const char* sep = " ";
        for (const auto& a : rule.body_pos) { out += sep; out += to_string(a); sep = ", "; }
        for (const auto& a : rule.body_neg) { out += sep; out += "not "; out += to_string(a); sep = ", "; }
        for (const auto& c : rule.comparisons) { out += sep; out += to_string(c); sep = ", "; }
        if (!has_body) out += ' ';
    }
    out += '.';
    return out;
}

std::string to_string(const Program& program) {
    std::string out;
    for (const auto& r : program.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

Program read_program(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

} // namespace dimin
