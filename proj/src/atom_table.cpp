#include "dimin/atom_table.h"

#include "dimin/error.h"

namespace dimin {

AtomTable::AtomTable() : offset_{0}, slots_(1024, empty_slot) {}

SymbolId AtomTable::symbol(std::string_view name) {
    std::string key(name);
    auto it = symbols_.find(key);
    if (it != symbols_.end()) return it->second;
    auto id = static_cast<SymbolId>(names_.size());
    names_.push_back(key);
    symbols_.emplace(std::move(key), id);
    return id;
}

std::optional<SymbolId> AtomTable::find_symbol(std::string_view name) const {
    auto it = symbols_.find(std::string(name));
    if (it == symbols_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t AtomTable::hash(SymbolId predicate, std::span<const SymbolId> args) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (predicate * 0xff51afd7ed558ccdULL);
    for (auto a : args) {
        h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xc4ceb9fe1a85ec53ULL;
    }
    return h ^ (h >> 29);
}

bool AtomTable::equal(AtomId id, SymbolId predicate, std::span<const SymbolId> args) const {
    if (this->predicate(id) != predicate || arity(id) != args.size()) return false;
    auto stored = this->args(id);
    for (std::size_t i = 0; i < args.size(); ++i)
        if (stored[i] != args[i]) return false;
    return true;
}

void AtomTable::grow() {
    std::vector<AtomId> fresh(slots_.size() * 2, empty_slot);
    std::size_t mask = fresh.size() - 1;
    for (AtomId id = 0; id < size(); ++id) {
        auto i = hash(predicate(id), args(id)) & mask;
        while (fresh[i] != empty_slot) i = (i + 1) & mask;
        fresh[i] = id;
    }
    slots_.swap(fresh);
}

std::optional<AtomId> AtomTable::find(SymbolId predicate, std::span<const SymbolId> args) const {
    std::size_t mask = slots_.size() - 1;
    for (auto i = hash(predicate, args) & mask; slots_[i] != empty_slot; i = (i + 1) & mask)
        if (equal(slots_[i], predicate, args)) return slots_[i];
    return std::nullopt;
}

AtomId AtomTable::intern(SymbolId predicate, std::span<const SymbolId> args) {
    std::size_t mask = slots_.size() - 1;
    auto i = hash(predicate, args) & mask;
    for (; slots_[i] != empty_slot; i = (i + 1) & mask)
        if (equal(slots_[i], predicate, args)) return slots_[i];
    auto id = static_cast<AtomId>(size());
    store_.push_back(predicate);
    store_.insert(store_.end(), args.begin(), args.end());
    offset_.push_back(static_cast<std::uint32_t>(store_.size()));
    slots_[i] = id;
    if (2 * size() > slots_.size()) grow();
    return id;
}

AtomId AtomTable::intern(const Atom& atom) {
    std::vector<SymbolId> args;
    args.reserve(atom.args.size());
    for (const auto& t : atom.args) {
        if (t.is_variable()) throw Error("cannot intern non-ground atom " + dimin::to_string(atom));
        args.push_back(symbol(t.name));
    }
    return intern(symbol(atom.predicate), args);
}

std::optional<AtomId> AtomTable::find(const Atom& atom) const {
    auto pred = find_symbol(atom.predicate);
    if (!pred) return std::nullopt;
    std::vector<SymbolId> args;
    for (const auto& t : atom.args) {
        auto s = t.is_variable() ? std::nullopt : find_symbol(t.name);
        if (!s) return std::nullopt;
        args.push_back(*s);
    }
    return find(*pred, args);
}

Atom AtomTable::atom(AtomId id) const {
    Atom a{names_[predicate(id)], {}};
    for (auto s : args(id)) a.args.push_back(Term::constant(names_[s]));
    return a;
}

std::string AtomTable::to_string(AtomId id) const {
    std::string out = names_[predicate(id)];
    auto as = args(id);
    if (!as.empty()) {
        out += '(';
        for (std::size_t i = 0; i < as.size(); ++i) {
            if (i) out += ',';
            out += names_[as[i]];
        }
        out += ')';
    }
    return out;
}

} // namespace dimin
