#pragma once

#include "ciflin/value.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ciflin {

// Finite domain of one variable: integer range, booleans, bounded lists
// over an integer/boolean element range, or a location set (pointers).
// Explicit domains hold a literal value set; they never appear in the DSL
// and exist for internal pinning (scoped variables under env steps).
struct Domain {
    enum class Kind { Int, Bool, List, Loc, Explicit };

    Kind kind = Kind::Int;
    std::int64_t lo = 0, hi = 0;            // Int; List element range
    Kind elem = Kind::Int;                  // List element kind (Int or Bool)
    std::size_t max_len = 0;                // List
    std::vector<std::string> locations;     // Loc
    std::vector<Value> values;              // Explicit

    static Domain integers(std::int64_t lo, std::int64_t hi);
    static Domain booleans();
    static Domain int_lists(std::int64_t lo, std::int64_t hi, std::size_t max_len);
    static Domain bool_lists(std::size_t max_len);
    static Domain location_set(std::vector<std::string> locs);
    static Domain singleton(const Value& v);

    // All values, shortest lists first, elements in ascending order;
    // locations in declared order.
    std::vector<Value> enumerate() const;
    std::size_t size() const;
    bool contains(const Value& v) const;

    std::string to_string() const;  // DSL form after "domain x : "
    bool operator==(const Domain&) const = default;
};

// Ordered variable → Domain table; iteration (and hence every valuation
// enumeration) follows declaration order.
struct DomainSpec {
    std::vector<std::pair<std::string, Domain>> vars;

    const Domain* find(const std::string& name) const;
    bool has(const std::string& name) const { return find(name) != nullptr; }
    void add(const std::string& name, Domain d) { vars.emplace_back(name, std::move(d)); }

    // Product of the per-variable domain sizes.
    std::size_t universe_size() const;

    DomainSpec with(const std::vector<std::pair<std::string, Domain>>& extra) const;
};

// Total assignment of values to the in-scope plain variables.
using Valuation = std::map<std::string, Value>;

// Every valuation of the spec, odometer order (last variable fastest).
std::vector<Valuation> enumerate_valuations(const DomainSpec& spec);

std::string to_string(const Valuation& v);

} // namespace ciflin
