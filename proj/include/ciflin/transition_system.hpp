#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ciflin {

// Generic labeled graph used for exporting the explicit LTS, the STS and
// the LiTS. Dashed edges render env transitions, matching the usual
// drawing convention.
struct TsEdge {
    std::size_t src = 0, dst = 0;
    std::string label;
    bool dashed = false;
};

struct TransitionSystem {
    std::vector<std::string> states;
    std::vector<TsEdge> edges;
    std::size_t root = 0;
    bool truncated = false;  // state bound hit; system is partial

    std::string to_dot(const std::string& name) const;
};

} // namespace ciflin
