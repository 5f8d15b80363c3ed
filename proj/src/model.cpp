#include "ciflin/model.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>

namespace ciflin {

const PredPtr& Automaton::init_of(const std::string& loc) const {
    auto it = init.find(loc);
    if (it == init.end()) throw ModelError("no init predicate for location '" + loc + "'");
    return it->second;
}

const PredPtr& Automaton::inv_of(const std::string& loc) const {
    auto it = inv.find(loc);
    if (it == inv.end()) throw ModelError("no invariant for location '" + loc + "'");
    return it->second;
}

bool Automaton::has_location(const std::string& loc) const {
    return std::find(locations.begin(), locations.end(), loc) != locations.end();
}

std::string Automaton::key() const {
    std::string out = name + "{";
    for (const auto& loc : locations) {
        out += loc + ":" + to_string(init_of(loc)) + "/" + to_string(inv_of(loc)) + ";";
    }
    out += "}";
    return out;
}

AutomatonPtr reinit_automaton(const AutomatonPtr& a, const std::string& loc) {
    if (!a->has_location(loc))
        throw ModelError("automaton '" + a->name + "' has no location '" + loc + "'");
    auto copy = std::make_shared<Automaton>(*a);
    for (const auto& w : copy->locations)
        copy->init[w] = (w == loc) ? pred_true() : pred_false();
    return copy;
}

CompPtr Comp::mk_atom(AutomatonPtr a) {
    auto c = std::make_shared<Comp>();
    c->kind = Kind::Atom;
    c->atom = std::move(a);
    return c;
}

CompPtr Comp::mk_par(CompPtr l, CompPtr r) {
    auto c = std::make_shared<Comp>();
    c->kind = Kind::Par;
    c->left = std::move(l);
    c->right = std::move(r);
    return c;
}

CompPtr Comp::mk_sync(std::set<std::string> actions, CompPtr child) {
    if (actions.count(kTau)) throw ModelError("tau cannot be made synchronizing");
    auto c = std::make_shared<Comp>();
    c->kind = Kind::Sync;
    c->sync_set = std::move(actions);
    c->child = std::move(child);
    return c;
}

namespace {

void collect_automata(const CompPtr& p, std::vector<AutomatonPtr>& out) {
    switch (p->kind) {
    case Comp::Kind::Atom:
        out.push_back(p->atom);
        return;
    case Comp::Kind::Par:
        collect_automata(p->left, out);
        collect_automata(p->right, out);
        return;
    case Comp::Kind::Sync:
        collect_automata(p->child, out);
        return;
    }
}

CompPtr reinit_rec(const CompPtr& p, const std::vector<std::string>& locs, std::size_t& i) {
    switch (p->kind) {
    case Comp::Kind::Atom:
        return Comp::mk_atom(reinit_automaton(p->atom, locs.at(i++)));
    case Comp::Kind::Par: {
        CompPtr l = reinit_rec(p->left, locs, i);
        CompPtr r = reinit_rec(p->right, locs, i);
        return Comp::mk_par(l, r);
    }
    case Comp::Kind::Sync:
        return Comp::mk_sync(p->sync_set, reinit_rec(p->child, locs, i));
    }
    throw ModelError("corrupt composition");
}

} // namespace

std::vector<AutomatonPtr> automata_of(const CompPtr& p) {
    std::vector<AutomatonPtr> out;
    collect_automata(p, out);
    return out;
}

CompPtr reinit(const CompPtr& p, const std::vector<std::string>& locs) {
    std::size_t n = automata_of(p).size();
    if (locs.size() != n)
        throw ModelError("reinit vector has length " + std::to_string(locs.size()) +
                         ", composition has " + std::to_string(n) + " automata");
    std::size_t i = 0;
    return reinit_rec(p, locs, i);
}

bool comp_struct_eq(const CompPtr& a, const CompPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case Comp::Kind::Atom: {
        const Automaton& x = *a->atom;
        const Automaton& y = *b->atom;
        if (x.name != y.name || x.locations != y.locations ||
            x.sync_actions != y.sync_actions || x.edges.size() != y.edges.size())
            return false;
        for (const auto& loc : x.locations) {
            if (!struct_eq(x.init_of(loc), y.init_of(loc))) return false;
            if (!struct_eq(x.inv_of(loc), y.inv_of(loc))) return false;
        }
        for (std::size_t i = 0; i < x.edges.size(); ++i) {
            const Edge& e = x.edges[i];
            const Edge& f = y.edges[i];
            if (e.src != f.src || e.action != f.action || e.dst != f.dst ||
                !struct_eq(e.reset, f.reset))
                return false;
        }
        return true;
    }
    case Comp::Kind::Par:
        return comp_struct_eq(a->left, b->left) && comp_struct_eq(a->right, b->right);
    case Comp::Kind::Sync:
        return a->sync_set == b->sync_set && comp_struct_eq(a->child, b->child);
    }
    return false;
}

std::string comp_key(const CompPtr& p) {
    switch (p->kind) {
    case Comp::Kind::Atom:
        return p->atom->key();
    case Comp::Kind::Par:
        return "(" + comp_key(p->left) + " || " + comp_key(p->right) + ")";
    case Comp::Kind::Sync: {
        std::string out = "sync{";
        for (const auto& a : p->sync_set) out += a + ",";
        return out + "}(" + comp_key(p->child) + ")";
    }
    }
    return "?";
}

std::string comp_to_string(const CompPtr& p) {
    switch (p->kind) {
    case Comp::Kind::Atom:
        return p->atom->name;
    case Comp::Kind::Par: {
        std::string l = comp_to_string(p->left);
        std::string r = comp_to_string(p->right);
        if (p->right->kind == Comp::Kind::Par) r = "(" + r + ")";
        return l + " || " + r;
    }
    case Comp::Kind::Sync: {
        std::string out = "sync {";
        bool first = true;
        for (const auto& a : p->sync_set) {
            if (!first) out += ", ";
            first = false;
            out += a;
        }
        out += "} ";
        std::string c = comp_to_string(p->child);
        if (p->child->kind == Comp::Kind::Par) c = "(" + c + ")";
        return out + c;
    }
    }
    return "?";
}

std::set<std::string> comp_var_names(const CompPtr& p) {
    std::set<std::string> out;
    std::set<VarRef> refs;
    for (const auto& a : automata_of(p)) {
        for (const auto& loc : a->locations) {
            collect_free_vars(a->init_of(loc), refs);
            collect_free_vars(a->inv_of(loc), refs);
        }
        for (const auto& e : a->edges) collect_free_vars(e.reset, refs);
    }
    for (const auto& r : refs) out.insert(r.name);
    return out;
}

AutomatonPtr Model::find_automaton(const std::string& name) const {
    for (const auto& a : automata)
        if (a->name == name) return a;
    return nullptr;
}

std::set<std::string> Model::location_universe() const {
    std::set<std::string> out;
    for (const auto& a : automata)
        out.insert(a->locations.begin(), a->locations.end());
    for (const auto& [n, d] : domains.vars)
        if (d.kind == Domain::Kind::Loc)
            out.insert(d.locations.begin(), d.locations.end());
    return out;
}

namespace {

void print_automaton(std::string& out, const Automaton& a) {
    out += "automaton " + a.name + " {\n";
    if (!a.sync_actions.empty()) {
        out += "  sync ";
        bool first = true;
        for (const auto& s : a.sync_actions) {
            if (!first) out += ", ";
            first = false;
            out += s;
        }
        out += ";\n";
    }
    for (const auto& loc : a.locations) {
        out += "  location " + loc + " {\n";
        const PredPtr& ini = a.init_of(loc);
        if (ini->kind == Pred::Kind::True) {
            out += "    initial;\n";
        } else if (ini->kind != Pred::Kind::False) {
            out += "    initial when " + to_string(ini) + ";\n";
        }
        const PredPtr& inv = a.inv_of(loc);
        if (inv->kind != Pred::Kind::True)
            out += "    invariant " + to_string(inv) + ";\n";
        for (const auto& e : a.edges) {
            if (e.src != loc) continue;
            out += "    edge " + e.action;
            if (e.reset->kind != Pred::Kind::True)
                out += " when " + to_string(e.reset);
            out += " goto " + e.dst + ";\n";
        }
        out += "  }\n";
    }
    out += "}\n";
}

} // namespace

std::string print_model(const Model& m) {
    std::string out;
    for (const auto& [name, d] : m.domains.vars)
        out += "domain " + name + " : " + d.to_string() + ";\n";
    if (!m.actions.empty()) {
        out += "actions ";
        for (std::size_t i = 0; i < m.actions.size(); ++i) {
            if (i > 0) out += ", ";
            out += m.actions[i];
        }
        out += ";\n";
    }
    if (!out.empty()) out += "\n";
    for (const auto& a : m.automata) {
        print_automaton(out, *a);
        out += "\n";
    }
    out += "composition " + m.composition_name + " = " + comp_to_string(m.composition) + ";\n";
    return out;
}

bool model_struct_eq(const Model& a, const Model& b) {
    if (a.domains.vars != b.domains.vars) return false;
    if (a.actions != b.actions) return false;
    if (a.composition_name != b.composition_name) return false;
    if (a.automata.size() != b.automata.size()) return false;
    for (std::size_t i = 0; i < a.automata.size(); ++i)
        if (!comp_struct_eq(Comp::mk_atom(a.automata[i]), Comp::mk_atom(b.automata[i])))
            return false;
    return comp_struct_eq(a.composition, b.composition);
}

} // namespace ciflin
