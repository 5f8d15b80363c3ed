#include "ciflin/domain.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>

namespace ciflin {

Domain Domain::integers(std::int64_t lo, std::int64_t hi) {
    Domain d;
    d.kind = Kind::Int;
    d.lo = lo;
    d.hi = hi;
    if (lo > hi) throw ModelError("empty integer domain");
    return d;
}

Domain Domain::booleans() {
    Domain d;
    d.kind = Kind::Bool;
    return d;
}

Domain Domain::int_lists(std::int64_t lo, std::int64_t hi, std::size_t max_len) {
    Domain d;
    d.kind = Kind::List;
    d.elem = Kind::Int;
    d.lo = lo;
    d.hi = hi;
    d.max_len = max_len;
    if (lo > hi) throw ModelError("empty list element domain");
    return d;
}

Domain Domain::bool_lists(std::size_t max_len) {
    Domain d;
    d.kind = Kind::List;
    d.elem = Kind::Bool;
    d.max_len = max_len;
    return d;
}

Domain Domain::location_set(std::vector<std::string> locs) {
    Domain d;
    d.kind = Kind::Loc;
    d.locations = std::move(locs);
    if (d.locations.empty()) throw ModelError("empty location domain");
    return d;
}

Domain Domain::singleton(const Value& v) {
    Domain d;
    d.kind = Kind::Explicit;
    d.values = {v};
    return d;
}

namespace {

std::vector<Value> element_values(const Domain& d) {
    std::vector<Value> out;
    if (d.elem == Domain::Kind::Bool) {
        out.push_back(Value::boolean(false));
        out.push_back(Value::boolean(true));
    } else {
        for (std::int64_t i = d.lo; i <= d.hi; ++i) out.push_back(Value::integer(i));
    }
    return out;
}

} // namespace

std::vector<Value> Domain::enumerate() const {
    std::vector<Value> out;
    switch (kind) {
    case Kind::Int:
        for (std::int64_t i = lo; i <= hi; ++i) out.push_back(Value::integer(i));
        break;
    case Kind::Bool:
        out.push_back(Value::boolean(false));
        out.push_back(Value::boolean(true));
        break;
    case Kind::List: {
        std::vector<Value> elems = element_values(*this);
        std::vector<Value::List> layer = {Value::List{}};
        out.push_back(Value::list({}));
        for (std::size_t len = 1; len <= max_len; ++len) {
            std::vector<Value::List> next;
            for (const auto& prefix : layer) {
                for (const auto& e : elems) {
                    Value::List xs = prefix;
                    xs.push_back(e);
                    out.push_back(Value::list(xs));
                    next.push_back(std::move(xs));
                }
            }
            layer = std::move(next);
        }
        break;
    }
    case Kind::Loc:
        for (const auto& l : locations) out.push_back(Value::location(l));
        break;
    case Kind::Explicit:
        out = values;
        break;
    }
    return out;
}

std::size_t Domain::size() const {
    switch (kind) {
    case Kind::Int:
        return static_cast<std::size_t>(hi - lo + 1);
    case Kind::Bool:
        return 2;
    case Kind::List: {
        std::size_t base = elem == Kind::Bool ? 2 : static_cast<std::size_t>(hi - lo + 1);
        std::size_t total = 1, pow = 1;
        for (std::size_t len = 1; len <= max_len; ++len) {
            pow *= base;
            total += pow;
        }
        return total;
    }
    case Kind::Loc:
        return locations.size();
    case Kind::Explicit:
        return values.size();
    }
    return 0;
}

bool Domain::contains(const Value& v) const {
    switch (kind) {
    case Kind::Int:
        return v.is_int() && v.as_int() >= lo && v.as_int() <= hi;
    case Kind::Bool:
        return v.is_bool();
    case Kind::List: {
        if (!v.is_list()) return false;
        const auto& xs = v.as_list();
        if (xs.size() > max_len) return false;
        for (const auto& x : xs) {
            if (elem == Kind::Bool) {
                if (!x.is_bool()) return false;
            } else {
                if (!x.is_int() || x.as_int() < lo || x.as_int() > hi) return false;
            }
        }
        return true;
    }
    case Kind::Loc:
        return v.is_loc() && std::find(locations.begin(), locations.end(), v.as_loc()) !=
                                 locations.end();
    case Kind::Explicit:
        return std::find(values.begin(), values.end(), v) != values.end();
    }
    return false;
}

std::string Domain::to_string() const {
    switch (kind) {
    case Kind::Int:
        return "int " + std::to_string(lo) + ".." + std::to_string(hi);
    case Kind::Bool:
        return "bool";
    case Kind::List:
        if (elem == Kind::Bool) return "list bool maxlen " + std::to_string(max_len);
        return "list int " + std::to_string(lo) + ".." + std::to_string(hi) + " maxlen " +
               std::to_string(max_len);
    case Kind::Loc: {
        std::string out = "loc {";
        for (std::size_t i = 0; i < locations.size(); ++i) {
            if (i > 0) out += ", ";
            out += locations[i];
        }
        return out + "}";
    }
    case Kind::Explicit: {
        std::string out = "explicit {";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) out += ", ";
            out += values[i].to_string();
        }
        return out + "}";
    }
    }
    return "?";
}

const Domain* DomainSpec::find(const std::string& name) const {
    for (const auto& [n, d] : vars)
        if (n == name) return &d;
    return nullptr;
}

std::size_t DomainSpec::universe_size() const {
    std::size_t total = 1;
    for (const auto& [n, d] : vars) total *= d.size();
    return total;
}

DomainSpec DomainSpec::with(const std::vector<std::pair<std::string, Domain>>& extra) const {
    DomainSpec out = *this;
    for (const auto& [n, d] : extra) {
        if (out.has(n)) throw ModelError("domain for '" + n + "' declared twice");
        out.vars.emplace_back(n, d);
    }
    return out;
}

std::vector<Valuation> enumerate_valuations(const DomainSpec& spec) {
    std::vector<std::vector<Value>> columns;
    columns.reserve(spec.vars.size());
    for (const auto& [n, d] : spec.vars) columns.push_back(d.enumerate());

    std::vector<Valuation> out;
    out.reserve(spec.universe_size());
    std::vector<std::size_t> idx(columns.size(), 0);
    while (true) {
        Valuation v;
        for (std::size_t i = 0; i < columns.size(); ++i)
            v.emplace(spec.vars[i].first, columns[i][idx[i]]);
        out.push_back(std::move(v));
        // odometer, last variable fastest
        std::size_t i = columns.size();
        while (i > 0) {
            --i;
            if (++idx[i] < columns[i].size()) break;
            idx[i] = 0;
            if (i == 0) return out;
        }
        if (columns.empty()) return out;
    }
}

std::string to_string(const Valuation& v) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, val] : v) {
        if (!first) out += ", ";
        first = false;
        out += name + "=" + val.to_string();
    }
    return out + "}";
}

} // namespace ciflin
