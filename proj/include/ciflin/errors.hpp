#pragma once

#include <stdexcept>
#include <string>

namespace ciflin {

// Raised by the model parser; carries the 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& what)
        : std::runtime_error(what), line(line), col(col) {}

    int line;
    int col;

    std::string pretty(const std::string& file = "") const {
        std::string head = file.empty() ? "" : file + ":";
        return head + std::to_string(line) + ":" + std::to_string(col) + ": " + what();
    }
};

// Semantic misuse of a well-parsed structure (bad reinit vector, unknown
// location, scope binding collision, ...).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Unbound variable or kind mismatch during predicate evaluation.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ciflin
