#pragma once

#include "ciflin/term.hpp"
#include "ciflin/transition_system.hpp"

#include <set>

namespace ciflin {

// (p,σ) —a,b→ (p',σ'): action a executed from valuation σ, b tells
// whether a is synchronizing.
struct ActionStep {
    std::string action;
    bool sync = false;
    TermPtr target;
    Valuation after;
};

// (p,σ) ⇝A (p',σ'): consistency of init/invariants plus the allowed
// environment state change; A is the sync-action set.
struct EnvStep {
    std::set<std::string> sync_actions;
    TermPtr target;
    Valuation after;
};

// Steps derivable from the explicit rules over the finite domains, as a
// deduplicated, deterministically ordered set.
std::vector<ActionStep> action_steps(const TermPtr& t, const Valuation& sigma,
                                     const DomainSpec& d);
std::vector<EnvStep> env_steps(const TermPtr& t, const Valuation& sigma, const DomainSpec& d);

// σ ⊨ p over plain variables only.
bool satisfies(const Valuation& sigma, const PredPtr& p);
// σ'⁺ ∪ σ ⊨ r: plain refs read σ, primed refs read σ'.
bool satisfies_reset(const Valuation& sigma, const Valuation& sigma_prime, const PredPtr& r);

// σ' candidates under the frame condition of a reset: exactly the
// variables with primed occurrences in r vary over their domains, all
// others are copied from σ.
std::vector<Valuation> reset_successors(const Valuation& sigma, const PredPtr& r,
                                        const DomainSpec& d);

// Reachable closure of both step relations from a set of initial states.
struct ExplicitLts {
    struct State {
        TermPtr term;
        Valuation valuation;
    };
    struct ActionEdge {
        std::size_t src, dst;
        std::string action;
        bool sync;
    };
    struct EnvEdge {
        std::size_t src, dst;
        std::set<std::string> sync_actions;
    };
    std::vector<State> states;  // insertion (BFS) order
    std::vector<ActionEdge> action_edges;
    std::vector<EnvEdge> env_edges;
    std::vector<std::size_t> initial;
    bool truncated = false;  // state bound hit
};

ExplicitLts build_explicit_lts(const TermPtr& t, const std::vector<Valuation>& initial,
                               const DomainSpec& d, std::size_t bound);

TransitionSystem explicit_lts(const TermPtr& t, const std::vector<Valuation>& initial,
                              const DomainSpec& d, std::size_t bound);

// Valuations of d's universe admitting some env step of t — the model's
// initial valuations.
std::vector<Valuation> initial_valuations(const TermPtr& t, const DomainSpec& d);

} // namespace ciflin
