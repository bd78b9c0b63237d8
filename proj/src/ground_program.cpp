#include "dimin/ground_program.h"

#include "dimin/error.h"

#include <algorithm>
#include <unordered_set>

namespace dimin {

Interpretation make_interpretation(std::vector<AtomId> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

bool contains(const Interpretation& set, AtomId atom) { return std::binary_search(set.begin(), set.end(), atom); }

bool is_subset(const Interpretation& small, const Interpretation& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Interpretation GroundProgram::atoms() const {
    std::vector<AtomId> out;
    for (const auto& r : rules) {
        out.insert(out.end(), r.head.begin(), r.head.end());
        out.insert(out.end(), r.pos.begin(), r.pos.end());
        out.insert(out.end(), r.neg.begin(), r.neg.end());
    }
    return make_interpretation(std::move(out));
}

Interpretation GroundProgram::head_atoms() const {
    std::vector<AtomId> out;
    for (const auto& r : rules) out.insert(out.end(), r.head.begin(), r.head.end());
    return make_interpretation(std::move(out));
}

bool GroundProgram::is_normal() const {
    return std::all_of(rules.begin(), rules.end(), [](const GroundRule& r) { return r.head.size() <= 1; });
}

bool GroundProgram::is_positive() const {
    return std::all_of(rules.begin(), rules.end(), [](const GroundRule& r) { return r.neg.empty(); });
}

std::string GroundProgram::rule_text(const GroundRule& rule) const {
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        if (i) out += " | ";
        out += table_->to_string(rule.head[i]);
    }
    if (!rule.body_empty() || rule.head.empty()) {
        out += rule.head.empty() ? ":-" : " :-";
        const char* sep = " ";
        for (auto a : rule.pos) { out += sep; out += table_->to_string(a); sep = ", "; }
        for (auto a : rule.neg) { out += sep; out += "not "; out += table_->to_string(a); sep = ", "; }
        if (rule.body_empty()) out += ' ';
    }
    out += '.';
    return out;
}

std::vector<std::string> GroundProgram::canonical_lines() const {
    std::vector<std::string> lines;
    lines.reserve(rules.size());
    for (const auto& r : rules) lines.push_back(rule_text(r));
    std::sort(lines.begin(), lines.end());
    return lines;
}

std::string GroundProgram::canonical_text() const {
    std::string out;
    for (const auto& l : canonical_lines()) {
        out += l;
        out += '\n';
    }
    return out;
}

std::string GroundProgram::to_text() const {
    auto text = canonical_text();
    auto bytes = text.size();
    text += "% stats: rules=" + std::to_string(rules.size()) + " atoms=" + std::to_string(atoms().size()) +
            " bytes=" + std::to_string(bytes) + "\n";
    return text;
}

Program GroundProgram::to_program() const {
    Program p;
    for (const auto& r : rules) {
        Rule out;
        for (auto a : r.head) out.head.push_back(table_->atom(a));
        for (auto a : r.pos) out.body_pos.push_back(table_->atom(a));
        for (auto a : r.neg) out.body_neg.push_back(table_->atom(a));
        p.rules.push_back(std::move(out));
    }
    return p;
}

GroundProgram from_ground_program(const Program& program, AtomTablePtr table) {
    GroundProgram g(std::move(table));
    for (const auto& r : program.rules) {
        if (!r.is_ground()) throw Error("rule is not ground: " + to_string(r));
        bool keep = std::all_of(r.comparisons.begin(), r.comparisons.end(), [](const Comparison& c) {
            return compare_constants(c.left.name, c.op, c.right.name);
        });
        if (!keep) continue;
        GroundRule gr;
        for (const auto& a : r.head) gr.head.push_back(g.table().intern(a));
        for (const auto& a : r.body_pos) gr.pos.push_back(g.table().intern(a));
        for (const auto& a : r.body_neg) gr.neg.push_back(g.table().intern(a));
        g.rules.push_back(std::move(gr));
    }
    return g;
}

std::vector<std::string> canonical_atoms(const AtomTable& table, const Interpretation& set) {
    std::vector<std::string> out;
    out.reserve(set.size());
    for (auto a : set) out.push_back(table.to_string(a));
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_interpretation(const AtomTable& table, const Interpretation& set) {
    std::string out = "{";
    const char* sep = "";
    for (const auto& s : canonical_atoms(table, set)) {
        out += sep;
        out += s;
        sep = ", ";
    }
    out += '}';
    return out;
}

bool is_model(const GroundProgram& program, const Interpretation& set) {
    auto in = [&](AtomId a) { return contains(set, a); };
    for (const auto& r : program.rules) {
        bool body = std::all_of(r.pos.begin(), r.pos.end(), in) && std::none_of(r.neg.begin(), r.neg.end(), in);
        if (body && std::none_of(r.head.begin(), r.head.end(), in)) return false;
    }
    return true;
}

} // namespace dimin
