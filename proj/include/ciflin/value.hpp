#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ciflin {

// A location name used as a runtime value (location-pointer variables).
struct LocName {
    std::string name;
    auto operator<=>(const LocName&) const = default;
};

// Runtime value: integer, boolean, finite list, or location name.
// Lists are homogeneous; structural equality throughout.
class Value {
public:
    enum class Kind { Int, Bool, List, Loc };
    using List = std::vector<Value>;

    Value() : rep_(std::int64_t{0}) {}

    static Value integer(std::int64_t v) { return Value(Rep(v)); }
    static Value boolean(bool v) { return Value(Rep(v)); }
    static Value list(List elems) { return Value(Rep(std::move(elems))); }
    static Value location(std::string name) { return Value(Rep(LocName{std::move(name)})); }

    Kind kind() const { return static_cast<Kind>(rep_.index()); }
    bool is_int() const { return kind() == Kind::Int; }
    bool is_bool() const { return kind() == Kind::Bool; }
    bool is_list() const { return kind() == Kind::List; }
    bool is_loc() const { return kind() == Kind::Loc; }

    std::int64_t as_int() const { return std::get<std::int64_t>(rep_); }
    bool as_bool() const { return std::get<bool>(rep_); }
    const List& as_list() const { return std::get<List>(rep_); }
    const std::string& as_loc() const { return std::get<LocName>(rep_).name; }

    friend bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    // Kind rank first, then payload; lists compare lexicographically.
    friend bool operator<(const Value& a, const Value& b) { return a.rep_ < b.rep_; }

    // Literal syntax of the model DSL; locations print as their bare name.
    std::string to_string() const;

private:
    using Rep = std::variant<std::int64_t, bool, List, LocName>;
    explicit Value(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

// Reference to a model variable; primed refs (x') denote post-transition
// values and are legal only inside edge reset predicates.
struct VarRef {
    std::string name;
    bool primed = false;

    auto operator<=>(const VarRef&) const = default;

    std::string to_string() const { return primed ? name + "'" : name; }
};

} // namespace ciflin
