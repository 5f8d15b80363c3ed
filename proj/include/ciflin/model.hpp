#pragma once

#include "ciflin/domain.hpp"
#include "ciflin/predicate.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ciflin {

struct Edge {
    std::string src;
    std::string action;   // declared action or "tau"
    PredPtr reset;        // primed refs denote post-transition values
    std::string dst;
};

inline constexpr const char* kTau = "tau";

// Automaton (V, init, inv, E, actS). Immutable after construction;
// reinitialization produces a fresh copy sharing the predicates.
struct Automaton {
    std::string name;
    std::vector<std::string> locations;          // V, declared order
    std::map<std::string, PredPtr> init;         // total on locations
    std::map<std::string, PredPtr> inv;          // total on locations
    std::vector<Edge> edges;
    std::set<std::string> sync_actions;          // actS, tau excluded

    const PredPtr& init_of(const std::string& loc) const;
    const PredPtr& inv_of(const std::string& loc) const;
    bool has_location(const std::string& loc) const;

    std::string key() const;  // canonical form, init maps included
};

using AutomatonPtr = std::shared_ptr<const Automaton>;

// α[x]: same automaton with init(w) = (w ≡ x), evaluated statically to
// literal true/false.
AutomatonPtr reinit_automaton(const AutomatonPtr& a, const std::string& loc);

// Composition tree: automaton | p ∥ q | σ_A(p).
struct Comp;
using CompPtr = std::shared_ptr<const Comp>;

struct Comp {
    enum class Kind { Atom, Par, Sync };

    Kind kind = Kind::Atom;
    AutomatonPtr atom;                 // Atom
    CompPtr left, right;               // Par
    std::set<std::string> sync_set;    // Sync
    CompPtr child;                     // Sync

    static CompPtr mk_atom(AutomatonPtr a);
    static CompPtr mk_par(CompPtr l, CompPtr r);
    static CompPtr mk_sync(std::set<std::string> actions, CompPtr c);
};

// Left-to-right Atom leaves; Par concatenates, Sync is transparent.
std::vector<AutomatonPtr> automata_of(const CompPtr& p);

// p[ℓ⃗]: the i-th automaton's init map becomes literal-true at ℓ⃗.i and
// literal-false elsewhere; everything else is untouched.
CompPtr reinit(const CompPtr& p, const std::vector<std::string>& locs);

bool comp_struct_eq(const CompPtr& a, const CompPtr& b);
std::string comp_key(const CompPtr& p);        // canonical, init-sensitive
std::string comp_to_string(const CompPtr& p);  // DSL composition syntax

// Base names of all variables occurring in the composition's predicates
// (primed refs contribute their base name).
std::set<std::string> comp_var_names(const CompPtr& p);

// A parsed model: one action universe, variable domains, named automata
// and a single top-level composition.
struct Model {
    DomainSpec domains;                   // declaration order
    std::vector<std::string> actions;     // declaration order
    std::vector<AutomatonPtr> automata;   // declaration order
    std::string composition_name = "Main";
    CompPtr composition;

    AutomatonPtr find_automaton(const std::string& name) const;
    // All known location names: automata locations plus loc-domain members.
    std::set<std::string> location_universe() const;
};

std::string print_model(const Model& m);
bool model_struct_eq(const Model& a, const Model& b);

} // namespace ciflin
