#pragma once
// Interning of symbols and ground atoms.
//
// Every ground atom is identified by a dense AtomId.  Programs that must be
// compared atom-by-atom (a diminished grounding and the full one, say) share a
// table through a shared_ptr so that equal atoms get equal ids.

#include "dimin/ast.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dimin {

using SymbolId = std::uint32_t;
using AtomId   = std::uint32_t;

class AtomTable {
public:
    AtomTable();

    SymbolId                symbol(std::string_view name);
    std::optional<SymbolId> find_symbol(std::string_view name) const;
    const std::string&      name(SymbolId id) const { return names_[id]; }

    AtomId                intern(SymbolId predicate, std::span<const SymbolId> args);
    std::optional<AtomId> find(SymbolId predicate, std::span<const SymbolId> args) const;
    // Ground atoms only; throws Error when the atom has a variable.
    AtomId                intern(const Atom& atom);
    std::optional<AtomId> find(const Atom& atom) const;

    SymbolId                  predicate(AtomId id) const { return store_[offset_[id]]; }
    std::span<const SymbolId> args(AtomId id) const {
        return {store_.data() + offset_[id] + 1, offset_[id + 1] - offset_[id] - 1};
    }
    std::uint32_t arity(AtomId id) const { return offset_[id + 1] - offset_[id] - 1; }
    Signature     signature(AtomId id) const { return {names_[predicate(id)], arity(id)}; }

    Atom        atom(AtomId id) const;
    std::string to_string(AtomId id) const;

    std::size_t size() const noexcept { return offset_.size() - 1; }

private:
    std::uint64_t hash(SymbolId predicate, std::span<const SymbolId> args) const;
    bool          equal(AtomId id, SymbolId predicate, std::span<const SymbolId> args) const;
    void          grow();

    std::vector<std::string>                  names_;
    std::unordered_map<std::string, SymbolId> symbols_;

    std::vector<SymbolId>      store_;   // predicate followed by args, per atom
    std::vector<std::uint32_t> offset_;  // size()+1 entries
    std::vector<AtomId>        slots_;   // open addressing, empty_slot marks free
    static constexpr AtomId    empty_slot = ~AtomId{0};
};

using AtomTablePtr = std::shared_ptr<AtomTable>;

inline AtomTablePtr make_atom_table() { return std::make_shared<AtomTable>(); }

} // namespace dimin
