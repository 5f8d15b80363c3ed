#pragma once

#include "ciflin/model.hpp"
#include "ciflin/transition_system.hpp"

#include <optional>
#include <set>

namespace ciflin {

// State of the linear transition system: one entry per automaton, either a
// location name or the wild-card "_" (nullopt) meaning "any location;
// unchanged by this transition".
using LinearState = std::vector<std::optional<std::string>>;

std::string linear_state_to_string(const LinearState& s);

// x⃗ ⊑ y⃗: positionwise, wild-cards match anything; requires #x⃗ ≤ #y⃗.
bool subseq(const LinearState& x, const std::vector<std::string>& y);

// x⃗ ▷ y⃗: keep x⃗'s entry unless wild-card, else take y⃗'s; y⃗'s tail
// beyond #x⃗ is kept. Requires #x⃗ ≤ #y⃗.
std::vector<std::string> overwrite(const LinearState& x, const std::vector<std::string>& y);

// p ⊨ ⟨v⃗⟩ —a,r→ ⟨v⃗'⟩; source and target have wild-cards at the same
// positions.
struct LitsTransition {
    LinearState source;
    std::string action;
    Conj reset;
    LinearState target;
};

// The static relations of the LiTS: sync-action set, init-function list,
// invariant-function list, and the wild-card count. Init maps are kept
// total (literal false for non-initial locations).
struct LitsStatic {
    std::set<std::string> sync_actions;                          // ⇝sa
    std::vector<std::map<std::string, PredPtr>> init_funcs;      // ⇝ipred
    std::vector<std::map<std::string, PredPtr>> inv_funcs;       // ⇝inv
    std::size_t wildcard_count = 0;                              // ⇝comps
    std::vector<AutomatonPtr> automata;                          // same order
};

LitsStatic lits_static(const CompPtr& p);
std::vector<LitsTransition> lits_action_transitions(const CompPtr& p);

struct Lits {
    CompPtr composition;
    LitsStatic statics;
    std::vector<LitsTransition> transitions;
};

Lits build_lits(const CompPtr& p);

// Transition-count prediction for a parallel composition of automata whose
// only synchronizing action is `action`: Σ_i #(non-a edges) + Π_i #(a
// edges). The hypothesis is validated; on violation no count is produced.
struct SizePrediction {
    bool hypothesis_ok = false;
    std::string reason;        // set when the hypothesis is violated
    std::size_t predicted = 0;
};

SizePrediction predict_size(const CompPtr& p, const std::string& action);

TransitionSystem lits_to_ts(const Lits& lits);

} // namespace ciflin
