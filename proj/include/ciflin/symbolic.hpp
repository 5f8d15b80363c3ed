#pragma once

#include "ciflin/model.hpp"
#include "ciflin/transition_system.hpp"

#include <optional>
#include <set>

namespace ciflin {

// ⟨p⟩ —a,b,u,n,n',r→ ⟨p[ℓ⃗]⟩. Label predicates are flat conjunction lists
// with literal-true units dropped; conjunct order follows rule-application
// order (left operand first).
struct SymbolicActionTransition {
    CompPtr source;
    std::string action;
    bool sync = false;
    Conj u, n, n_prime, r;
    std::vector<std::string> target_locs;
    CompPtr target;  // reinit(source, target_locs)
};

// ⟨p⟩ ⇝u,n,A ⟨p[ℓ⃗]⟩.
struct SymbolicEnvTransition {
    CompPtr source;
    Conj u, n;
    std::set<std::string> sync_actions;
    std::vector<std::string> target_locs;
    CompPtr target;
};

std::vector<SymbolicActionTransition> symbolic_action_transitions(const CompPtr& p);
std::vector<SymbolicEnvTransition> symbolic_env_transitions(const CompPtr& p);

// All ℓ⃗ with ℓ⃗.i a location of the i-th automaton: the Cartesian product
// in automaton order (leftmost index most significant).
std::vector<std::vector<std::string>> locsof(const CompPtr& p);

// Symbolic transition system: the root plus reachable reinitializations.
struct Sts {
    struct ActionEdge {
        std::size_t src, dst;
        std::string action;
        bool sync;
        Conj u, n, n_prime, r;
    };
    struct EnvEdge {
        std::size_t src, dst;
        Conj u, n;
        std::set<std::string> sync_actions;
    };

    CompPtr root;
    std::vector<CompPtr> states;  // [0] = root, then BFS discovery order
    // Location vector per state; disengaged for the root.
    std::vector<std::optional<std::vector<std::string>>> state_locs;
    std::vector<ActionEdge> action_edges;
    std::vector<EnvEdge> env_edges;
    bool pruned = false;

    std::string state_display(std::size_t i) const;
};

// BFS over both transition kinds. With prune=true, transitions whose u
// carries a literal-false conjunct are dropped and their targets are not
// explored (they are unreachable: no σ satisfies such a u).
Sts build_sts(const CompPtr& p, bool prune);

TransitionSystem sts_to_ts(const Sts& sts);

} // namespace ciflin
