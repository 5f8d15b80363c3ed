#pragma once

#include "ciflin/parser.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string models_dir() { return CIFLIN_MODELS_DIR; }
inline std::string golden_dir() { return CIFLIN_GOLDEN_DIR; }

inline ciflin::Model traingate() {
    return ciflin::parse_model(read_file(models_dir() + "/traingate.cif"));
}

// σ from "name=value" pairs against a model's domains; values parsed as
// predicates would be overkill, so keep a tiny literal reader.
inline ciflin::Value lit_int(std::int64_t v) { return ciflin::Value::integer(v); }

inline ciflin::Value int_list(std::initializer_list<std::int64_t> xs) {
    ciflin::Value::List l;
    for (auto x : xs) l.push_back(ciflin::Value::integer(x));
    return ciflin::Value::list(std::move(l));
}

} // namespace testutil
