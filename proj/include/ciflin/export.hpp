#pragma once

#include "ciflin/explicit_sem.hpp"
#include "ciflin/linear.hpp"
#include "ciflin/linearize.hpp"
#include "ciflin/symbolic.hpp"
#include "ciflin/verify.hpp"

#include <json.hpp>

namespace ciflin {

// Insertion-ordered JSON keeps every export byte-stable.
using Json = nlohmann::ordered_json;

Json model_to_json(const Model& m);
Json sts_to_json(const Sts& sts);
Json lits_to_json(const Lits& lits);
Json linearization_to_json(const LinearizationResult& res);
Json explicit_lts_to_json(const ExplicitLts& lts);

// wall_ms is volatile; it only appears when timings are requested.
Json report_to_json(const CheckReport& r, bool timings = false);
std::string report_to_text(const CheckReport& r, bool timings = false);

} // namespace ciflin
