#include "ciflin/transition_system.hpp"

namespace ciflin {

namespace {

// Quotes only: labels use \n / \l sequences deliberately and predicates
// never contain backslashes.
std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string TransitionSystem::to_dot(const std::string& name) const {
    std::string out = "digraph " + name + " {\n";
    out += "  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        out += "  s" + std::to_string(i) + " [label=\"" + dot_escape(states[i]) + "\"";
        if (i == root) out += ", penwidth=2";
        out += "];\n";
    }
    for (const auto& e : edges) {
        out += "  s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) +
               " [label=\"" + dot_escape(e.label) + "\"";
        if (e.dashed) out += ", style=dashed";
        out += "];\n";
    }
    out += "}\n";
    return out;
}

} // namespace ciflin
