#pragma once

#include "ciflin/explicit_sem.hpp"
#include "ciflin/linear.hpp"
#include "ciflin/linearize.hpp"
#include "ciflin/symbolic.hpp"

#include <functional>

namespace ciflin {

struct CheckStats {
    std::size_t states = 0;
    std::size_t pairs = 0;
    double wall_ms = 0;  // volatile; serialized only on request
};

struct CheckReport {
    std::string name;
    bool pass = false;
    bool budget_exceeded = false;
    std::string counterexample;  // empty iff pass
    CheckStats stats;
};

// The mutate_* hooks exist for fault-injection tests: they let a test
// damage one side of a dual computation and watch the check fail.
struct VerifyOptions {
    std::size_t max_universe = 50000;
    std::size_t max_pairs = 20000000;
    std::size_t max_states = 20000;
    std::function<void(Sts&)> mutate_sts;
    std::function<void(Lits&)> mutate_lits;
    std::function<void(LinearizationResult&)> mutate_linearization;
};

// Symbolic ↔ explicit: over every pruned-STS state and every valuation of
// the bounded domain, the explicit step sets and the step sets
// reconstructed from the symbolic labels coincide.
CheckReport check_symbolic_soundness_completeness(const CompPtr& p, const DomainSpec& d,
                                                  const VerifyOptions& opts = {});

// Linear ↔ symbolic: expanding the LiTS over locsof(p) reproduces each STS
// state's symbolic action and env transition sets, modulo conjunction
// normalization, with pruning applied on both sides.
CheckReport check_lits_soundness_completeness(const CompPtr& p,
                                              const VerifyOptions& opts = {});

// End-to-end: p and |[{ℓ⃗↦⊥}::α_p]| are stateless-bisimilar over the
// bounded domain. Runs both partition refinement on the combined term
// graph and the direct transfer-condition check of the candidate witness
// relation; both must agree and pass.
CheckReport check_correctness_of_linearization(const CompPtr& p, const Model& context,
                                               const DomainSpec& d,
                                               const VerifyOptions& opts = {});

// Term graph with (σ, label, σ') edge labels: the structure on which
// stateless bisimilarity over the bounded domain is decided.
struct TermLts {
    std::vector<TermPtr> states;
    std::vector<std::string> keys;                              // term_key per state
    std::vector<std::vector<std::pair<int, int>>> edges;        // (label id, dst), sorted
    std::vector<std::string> labels;                            // id → rendering
    bool truncated = false;
};

TermLts build_term_lts(const std::vector<TermPtr>& roots, const DomainSpec& d,
                       std::size_t max_states);

// Coarsest partition under signature refinement; block ids per state.
std::vector<int> coarsest_partition(const TermLts& lts);

} // namespace ciflin
