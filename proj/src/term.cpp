#include "ciflin/term.hpp"

#include "ciflin/errors.hpp"

namespace ciflin {

TermPtr Term::of(CompPtr c) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Comp;
    t->comp = std::move(c);
    return t;
}

TermPtr Term::scope(std::vector<ScopeBinding> bindings, TermPtr body) {
    if (bindings.empty()) throw ModelError("variable scope with no bindings");
    auto t = std::make_shared<Term>();
    t->kind = Kind::Scope;
    t->bindings = std::move(bindings);
    t->body = std::move(body);
    return t;
}

namespace {

std::string binding_str(const ScopeBinding& b) {
    return b.var + ":=" + (b.value ? b.value->to_string() : "_|_");
}

} // namespace

std::string term_key(const TermPtr& t) {
    if (t->kind == Term::Kind::Comp) return comp_key(t->comp);
    std::string out = "|[";
    for (const auto& b : t->bindings) out += binding_str(b) + ",";
    return out + "::" + term_key(t->body) + "]|";
}

std::string term_to_string(const TermPtr& t) {
    if (t->kind == Term::Kind::Comp) return comp_to_string(t->comp);
    std::string out = "|[ ";
    for (std::size_t i = 0; i < t->bindings.size(); ++i) {
        if (i > 0) out += ", ";
        out += binding_str(t->bindings[i]);
    }
    return out + " :: " + term_to_string(t->body) + " ]|";
}

} // namespace ciflin
