#pragma once

#include "ciflin/model.hpp"

#include <cstdint>

namespace ciflin {

// splitmix64; the standard distributions are implementation-defined, and
// frozen seeds must mean the same model everywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    // k in [lo, hi]
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(unsigned percent) { return below(100) < percent; }
};

struct GenParams {
    int min_automata = 2;
    int max_automata = 3;
    int max_locations = 3;   // per automaton, >= 1
    int max_edges = 4;       // per automaton
    int num_actions = 3;
    int sync_pool = 2;       // first k actions may synchronize
    int max_vars = 2;
    std::int64_t max_int_hi = 3;     // upper bound for integer ranges
    std::size_t max_universe = 200;  // valuation-count cap
    bool allow_sync_ops = true;       // σ_A wrappers in the composition
    unsigned tau_percent = 10;        // chance an edge is silent
    // Eq.-(11) shape: plain parallel composition, every automaton's sync
    // set exactly {action0}, no σ_A operators.
    bool hypothesis_mode = false;
};

// Deterministic in (seed, params). The result always parses back from its
// printed form and is well-kinded.
Model generate_model(std::uint64_t seed, const GenParams& params);

} // namespace ciflin
