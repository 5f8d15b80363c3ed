#pragma once

#include "ciflin/model.hpp"

#include <string>
#include <string_view>

namespace ciflin {

// Parses the model DSL. Throws ParseError with a 1-based source position
// on syntax errors, undeclared names, duplicates and kind mismatches.
Model parse_model(std::string_view text);

// Parses a single predicate against an existing model's declarations.
// Meant for tests and tooling; same resolution rules as edge resets when
// `allow_primed` is set, otherwise as init/invariant predicates.
PredPtr parse_predicate(std::string_view text, const Model& context, bool allow_primed = true);

} // namespace ciflin
