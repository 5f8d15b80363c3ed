#pragma once

#include "ciflin/linear.hpp"
#include "ciflin/term.hpp"

namespace ciflin {

// Result of linearizing a composition: a single-location automaton whose
// edges are self-loops built from the LiTS, plus the fresh location
// pointers and their domains (the automata's location sets).
struct LinearizationResult {
    AutomatonPtr automaton;                                  // α_p
    std::string location;                                    // its location x
    std::vector<std::string> pointers;                       // ℓ⃗
    std::vector<std::pair<std::string, Domain>> pointer_domains;
    Lits lits;                                               // the source LiTS
};

// The least fresh variable names l0, l1, …: candidates in order, skipping
// names free in p or declared in the model.
std::vector<std::string> fresh_pointers(const CompPtr& p, const Model& context);

LinearizationResult linearize(const CompPtr& p, const Model& context);

// |[ {ℓ⃗ ↦ ⊥} :: α_p ]| with the pointer domains attached.
TermPtr scope_linearized(const LinearizationResult& res);

// A standalone, re-parsable model: the original domains plus pointer
// domains, the action universe, and the linear automaton as the top-level
// composition. With simplify set, predicates are constant-folded.
Model linearized_model(const LinearizationResult& res, const Model& context,
                       bool simplify = false);

} // namespace ciflin
