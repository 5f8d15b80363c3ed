#pragma once

#include "ciflin/model.hpp"

#include <optional>

namespace ciflin {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// One scoped variable: its current value, or ⊥ before initialization.
// Location pointers carry their automaton's location set as domain.
struct ScopeBinding {
    std::string var;
    std::optional<Value> value;  // nullopt = ⊥
    Domain domain;
};

// Explicit-semantics term: a bare composition, or a variable scope
// |[ {x⃗ ↦ v⃗} :: body ]| wrapped around one.
struct Term {
    enum class Kind { Comp, Scope };

    Kind kind = Kind::Comp;
    CompPtr comp;                         // Comp
    std::vector<ScopeBinding> bindings;   // Scope
    TermPtr body;                         // Scope

    static TermPtr of(CompPtr c);
    static TermPtr scope(std::vector<ScopeBinding> bindings, TermPtr body);
};

std::string term_key(const TermPtr& t);        // canonical, init-sensitive
std::string term_to_string(const TermPtr& t);  // display form

} // namespace ciflin
