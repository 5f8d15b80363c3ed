#include "ciflin/parser.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace ciflin {

namespace {

enum class Tok {
    Ident, Int, Prime,
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Comma, Semi, Colon, DotDot,
    EqEq, Le, PlusPlus, Plus, Minus, Assign,
    AndAnd, OrOr,
    End
};

struct Token {
    Tok kind;
    std::string text;
    std::int64_t value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            Token t;
            t.line = line_;
            t.col = col_;
            if (eof()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Ident;
                while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    t.text += get();
                out.push_back(t);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Tok::Int;
                std::string digits;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                    digits += get();
                t.value = std::stoll(digits);
                t.text = digits;
                out.push_back(t);
                continue;
            }
            switch (c) {
            case '\'': get(); t.kind = Tok::Prime; break;
            case '{': get(); t.kind = Tok::LBrace; break;
            case '}': get(); t.kind = Tok::RBrace; break;
            case '(': get(); t.kind = Tok::LParen; break;
            case ')': get(); t.kind = Tok::RParen; break;
            case '[': get(); t.kind = Tok::LBracket; break;
            case ']': get(); t.kind = Tok::RBracket; break;
            case ',': get(); t.kind = Tok::Comma; break;
            case ';': get(); t.kind = Tok::Semi; break;
            case ':': get(); t.kind = Tok::Colon; break;
            case '.':
                get();
                if (!eof() && peek() == '.') { get(); t.kind = Tok::DotDot; break; }
                fail(t, "expected '..'");
            case '=':
                get();
                if (!eof() && peek() == '=') { get(); t.kind = Tok::EqEq; break; }
                t.kind = Tok::Assign;
                break;
            case '<':
                get();
                if (!eof() && peek() == '=') { get(); t.kind = Tok::Le; break; }
                fail(t, "expected '<='");
            case '+':
                get();
                if (!eof() && peek() == '+') { get(); t.kind = Tok::PlusPlus; break; }
                t.kind = Tok::Plus;
                break;
            case '-': get(); t.kind = Tok::Minus; break;
            case '&':
                get();
                if (!eof() && peek() == '&') { get(); t.kind = Tok::AndAnd; break; }
                fail(t, "expected '&&'");
            case '|':
                get();
                if (!eof() && peek() == '|') { get(); t.kind = Tok::OrOr; break; }
                fail(t, "expected '||'");
            default:
                fail(t, std::string("unexpected character '") + c + "'");
            }
            out.push_back(t);
        }
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char get() {
        char c = src_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { get(); continue; }
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (!eof() && peek() != '\n') get();
                continue;
            }
            break;
        }
    }
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// Expression kinds for the checker; ListEmpty unifies with any list kind.
enum class KindTag { Int, Bool, ListInt, ListBool, ListEmpty, Loc };

std::string kind_name(KindTag k) {
    switch (k) {
    case KindTag::Int: return "int";
    case KindTag::Bool: return "bool";
    case KindTag::ListInt: return "list int";
    case KindTag::ListBool: return "list bool";
    case KindTag::ListEmpty: return "list";
    case KindTag::Loc: return "loc";
    }
    return "?";
}

bool is_list_kind(KindTag k) {
    return k == KindTag::ListInt || k == KindTag::ListBool || k == KindTag::ListEmpty;
}

struct RawAutomaton {
    std::string name;
    int line = 1, col = 1;
    std::vector<std::string> locations;
    std::map<std::string, PredPtr> init, inv;
    std::vector<Edge> edges;
    std::set<std::string> sync_actions;
};

struct RawComp {
    enum class Kind { Ref, Par, Sync };
    Kind kind = Kind::Ref;
    std::string ref;
    int line = 1, col = 1;
    std::shared_ptr<RawComp> left, right, child;
    std::set<std::string> sync_set;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    Model parse() {
        parse_declarations();
        resolve();
        return std::move(model_);
    }

    // Single-predicate entry point used by parse_predicate().
    PredPtr parse_single_predicate(const Model& ctx, bool allow_primed) {
        model_ = ctx;
        PredPtr raw = parse_pred();
        expect(Tok::End, "end of input");
        PredPtr resolved = resolve_pred(raw, allow_primed, "predicate");
        return resolved;
    }

private:
    // ----- token plumbing -----
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t n) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    Token take() { return toks_[pos_++]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_kw(const char* kw) const { return cur().kind == Tok::Ident && cur().text == kw; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    bool accept_kw(const char* kw) {
        if (!at_kw(kw)) return false;
        ++pos_;
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail("expected " + what);
        return take();
    }
    void expect_kw(const char* kw) {
        if (!at_kw(kw)) fail(std::string("expected '") + kw + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(cur().line, cur().col, msg);
    }
    [[noreturn]] void fail_at(int line, int col, const std::string& msg) const {
        throw ParseError(line, col, msg);
    }

    std::string expect_name(const std::string& what) {
        if (!at(Tok::Ident)) fail("expected " + what);
        return take().text;
    }

    // ----- declarations -----
    void parse_declarations() {
        while (!at(Tok::End)) {
            if (at_kw("domain")) { parse_domain(); continue; }
            if (at_kw("actions")) { parse_actions(); continue; }
            if (at_kw("automaton")) { parse_automaton(); continue; }
            if (at_kw("composition")) { parse_composition(); continue; }
            fail("expected 'domain', 'actions', 'automaton' or 'composition'");
        }
    }

    std::int64_t parse_int_bound() {
        bool neg = accept(Tok::Minus);
        Token t = expect(Tok::Int, "integer");
        return neg ? -t.value : t.value;
    }

    void parse_domain() {
        Token kw = take();  // 'domain'
        std::string name = expect_name("variable name");
        if (name == kTau) fail_at(kw.line, kw.col, "'tau' is reserved");
        expect(Tok::Colon, "':'");
        Domain d;
        if (accept_kw("int")) {
            std::int64_t lo = parse_int_bound();
            expect(Tok::DotDot, "'..'");
            std::int64_t hi = parse_int_bound();
            if (lo > hi) fail_at(kw.line, kw.col, "empty integer range");
            d = Domain::integers(lo, hi);
        } else if (accept_kw("bool")) {
            d = Domain::booleans();
        } else if (accept_kw("list")) {
            if (accept_kw("int")) {
                std::int64_t lo = parse_int_bound();
                expect(Tok::DotDot, "'..'");
                std::int64_t hi = parse_int_bound();
                if (lo > hi) fail_at(kw.line, kw.col, "empty integer range");
                expect_kw("maxlen");
                Token len = expect(Tok::Int, "maximum length");
                d = Domain::int_lists(lo, hi, static_cast<std::size_t>(len.value));
            } else if (accept_kw("bool")) {
                expect_kw("maxlen");
                Token len = expect(Tok::Int, "maximum length");
                d = Domain::bool_lists(static_cast<std::size_t>(len.value));
            } else {
                fail("expected list element kind 'int' or 'bool'");
            }
        } else if (accept_kw("loc")) {
            expect(Tok::LBrace, "'{'");
            std::vector<std::string> locs;
            do {
                locs.push_back(expect_name("location name"));
            } while (accept(Tok::Comma));
            expect(Tok::RBrace, "'}'");
            d = Domain::location_set(std::move(locs));
        } else {
            fail("expected domain kind");
        }
        expect(Tok::Semi, "';'");
        if (model_.domains.has(name))
            fail_at(kw.line, kw.col, "duplicate domain for variable '" + name + "'");
        model_.domains.add(name, std::move(d));
    }

    void parse_actions() {
        take();  // 'actions'
        do {
            Token t = cur();
            std::string a = expect_name("action name");
            if (a == kTau) fail_at(t.line, t.col, "'tau' is reserved and need not be declared");
            if (std::find(model_.actions.begin(), model_.actions.end(), a) != model_.actions.end())
                fail_at(t.line, t.col, "duplicate action '" + a + "'");
            model_.actions.push_back(a);
        } while (accept(Tok::Comma));
        expect(Tok::Semi, "';'");
    }

    void parse_automaton() {
        Token kw = take();  // 'automaton'
        RawAutomaton a;
        a.line = kw.line;
        a.col = kw.col;
        a.name = expect_name("automaton name");
        expect(Tok::LBrace, "'{'");
        if (accept_kw("sync")) {
            do {
                Token t = cur();
                std::string s = expect_name("action name");
                if (s == kTau) fail_at(t.line, t.col, "tau cannot be synchronizing");
                if (!a.sync_actions.insert(s).second)
                    fail_at(t.line, t.col, "duplicate sync action '" + s + "'");
            } while (accept(Tok::Comma));
            expect(Tok::Semi, "';'");
        }
        while (at_kw("location")) parse_location(a);
        expect(Tok::RBrace, "'}'");
        if (a.locations.empty()) fail_at(kw.line, kw.col, "automaton '" + a.name + "' has no locations");
        raw_automata_.push_back(std::move(a));
    }

    void parse_location(RawAutomaton& a) {
        take();  // 'location'
        Token nt = cur();
        std::string loc = expect_name("location name");
        if (a.init.count(loc))
            fail_at(nt.line, nt.col, "duplicate location '" + loc + "'");
        a.locations.push_back(loc);
        expect(Tok::LBrace, "'{'");
        PredPtr init = pred_false();
        PredPtr inv = pred_true();
        if (accept_kw("initial")) {
            if (accept_kw("when")) init = parse_pred();
            else init = pred_true();
            expect(Tok::Semi, "';'");
        }
        if (accept_kw("invariant")) {
            inv = parse_pred();
            expect(Tok::Semi, "';'");
        }
        while (accept_kw("edge")) {
            Edge e;
            e.src = loc;
            Token at = cur();
            e.action = expect_name("action name");
            edge_action_pos_.emplace_back(at.line, at.col);
            e.reset = accept_kw("when") ? parse_pred() : pred_true();
            expect_kw("goto");
            Token dt = cur();
            e.dst = expect_name("location name");
            edge_target_pos_.emplace_back(dt.line, dt.col);
            expect(Tok::Semi, "';'");
            a.edges.push_back(std::move(e));
        }
        expect(Tok::RBrace, "'}'");
        a.init[loc] = init;
        a.inv[loc] = inv;
    }

    void parse_composition() {
        Token kw = take();  // 'composition'
        if (raw_composition_) fail_at(kw.line, kw.col, "duplicate composition declaration");
        model_.composition_name = expect_name("composition name");
        expect(Tok::Assign, "'='");
        raw_composition_ = parse_comp_expr();
        expect(Tok::Semi, "';'");
    }

    std::shared_ptr<RawComp> parse_comp_expr() {
        auto left = parse_comp_term();
        while (accept(Tok::OrOr)) {
            auto node = std::make_shared<RawComp>();
            node->kind = RawComp::Kind::Par;
            node->left = left;
            node->right = parse_comp_term();
            left = node;
        }
        return left;
    }

    std::shared_ptr<RawComp> parse_comp_term() {
        if (accept_kw("sync")) {
            auto node = std::make_shared<RawComp>();
            node->kind = RawComp::Kind::Sync;
            node->line = ahead(0).line;
            node->col = ahead(0).col;
            expect(Tok::LBrace, "'{'");
            do {
                Token t = cur();
                std::string s = expect_name("action name");
                if (s == kTau) fail_at(t.line, t.col, "tau cannot be listed in a sync set");
                node->sync_set.insert(s);
            } while (accept(Tok::Comma));
            expect(Tok::RBrace, "'}'");
            node->child = parse_comp_term();
            return node;
        }
        if (accept(Tok::LParen)) {
            auto inner = parse_comp_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        Token t = cur();
        auto node = std::make_shared<RawComp>();
        node->kind = RawComp::Kind::Ref;
        node->line = t.line;
        node->col = t.col;
        node->ref = expect_name("automaton name");
        return node;
    }

    // ----- predicates (raw; identifiers resolved in a second pass) -----
    PredPtr parse_pred() { return parse_or(); }

    PredPtr parse_or() {
        PredPtr left = parse_and();
        while (accept(Tok::OrOr)) left = mk_or(left, parse_and());
        return left;
    }

    PredPtr parse_and() {
        PredPtr left = parse_pred_atom();
        while (accept(Tok::AndAnd)) left = mk_and(left, parse_pred_atom());
        return left;
    }

    bool next_starts_expr_op(std::size_t offset) const {
        Tok k = ahead(offset).kind;
        return k == Tok::EqEq || k == Tok::Le || k == Tok::Plus || k == Tok::Minus ||
               k == Tok::PlusPlus;
    }

    PredPtr parse_pred_atom() {
        Token t = cur();
        // 'true'/'false' are predicate literals unless they begin a comparison.
        if ((at_kw("true") || at_kw("false")) && !next_starts_expr_op(1)) {
            take();
            return t.text == "true" ? pred_true() : pred_false();
        }
        if (at(Tok::LParen)) {
            // Either a parenthesized predicate or a parenthesized expression
            // starting a comparison; try the predicate reading first.
            std::size_t save = pos_;
            take();
            try {
                PredPtr inner = parse_pred();
                if (at(Tok::RParen) && !next_starts_expr_op(1)) {
                    take();
                    return inner;
                }
            } catch (const ParseError&) {
            }
            pos_ = save;
        }
        ExprPtr lhs = parse_expr();
        if (accept_kw("in")) {
            expect(Tok::LBrace, "'{'");
            std::vector<std::string> locs;
            do {
                locs.push_back(expect_name("location name"));
            } while (accept(Tok::Comma));
            expect(Tok::RBrace, "'}'");
            if (lhs->kind != Expr::Kind::Var || lhs->var.primed)
                fail_at(t.line, t.col, "'in' applies to a plain variable");
            auto p = mk_member(lhs->var, std::move(locs));
            auto q = std::make_shared<Pred>(*p);
            q->line = t.line;
            q->col = t.col;
            return q;
        }
        CmpOp op;
        if (accept(Tok::EqEq)) op = CmpOp::Eq;
        else if (accept(Tok::Le)) op = CmpOp::Le;
        else fail("expected '==', '<=' or 'in'");
        ExprPtr rhs = parse_expr();
        auto p = std::make_shared<Pred>();
        p->kind = Pred::Kind::Cmp;
        p->op = op;
        p->lhs = lhs;
        p->rhs = rhs;
        p->line = t.line;
        p->col = t.col;
        return p;
    }

    ExprPtr parse_expr() {
        ExprPtr left = parse_expr_atom();
        while (true) {
            if (accept(Tok::Plus)) left = mk_add(left, parse_expr_atom());
            else if (accept(Tok::Minus)) left = mk_sub(left, parse_expr_atom());
            else if (accept(Tok::PlusPlus)) left = mk_concat(left, parse_expr_atom());
            else return left;
        }
    }

    ExprPtr parse_expr_atom() {
        Token t = cur();
        if (accept(Tok::LParen)) {
            ExprPtr inner = parse_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (at(Tok::Int)) {
            take();
            return mk_literal(Value::integer(t.value));
        }
        if (at(Tok::Minus) && ahead(1).kind == Tok::Int) {
            take();
            Token n = take();
            return mk_literal(Value::integer(-n.value));
        }
        if (at(Tok::LBracket)) {
            take();
            std::vector<ExprPtr> elems;
            if (!at(Tok::RBracket)) {
                do {
                    elems.push_back(parse_expr());
                } while (accept(Tok::Comma));
            }
            expect(Tok::RBracket, "']'");
            return mk_list(std::move(elems));
        }
        if (at(Tok::Ident)) {
            if (at_kw("true") || at_kw("false")) {
                take();
                return mk_literal(Value::boolean(t.text == "true"));
            }
            take();
            bool primed = accept(Tok::Prime);
            // Names resolve to variables or location literals later; store a
            // VarRef carrying the position for diagnostics.
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Var;
            e->var = VarRef{t.text, primed};
            e->line = t.line;
            e->col = t.col;
            return e;
        }
        fail("expected expression");
    }

    // ----- resolution and kind checking -----

    void resolve() {
        // Model-level name checks.
        std::set<std::string> automaton_names;
        for (const auto& a : raw_automata_) {
            if (!automaton_names.insert(a.name).second)
                fail_at(a.line, a.col, "duplicate automaton name '" + a.name + "'");
        }
        std::set<std::string> locs = location_universe();
        for (const auto& [name, d] : model_.domains.vars) {
            if (d.kind == Domain::Kind::Loc)
                for (const auto& l : d.locations) locs.insert(l);
        }
        for (const auto& [name, d] : model_.domains.vars) {
            if (locs.count(name))
                throw ParseError(1, 1, "variable '" + name + "' collides with a location name");
        }

        // Per-automaton resolution.
        std::size_t edge_idx = 0;
        for (auto& ra : raw_automata_) {
            for (const auto& s : ra.sync_actions)
                if (!declared_action(s))
                    fail_at(ra.line, ra.col, "undeclared action '" + s + "' in sync list");
            for (std::size_t i = 0; i < ra.edges.size(); ++i, ++edge_idx) {
                Edge& e = ra.edges[i];
                auto [al, ac] = edge_action_pos_[edge_idx];
                if (e.action != kTau && !declared_action(e.action))
                    fail_at(al, ac, "undeclared action '" + e.action + "'");
                auto [tl, tc] = edge_target_pos_[edge_idx];
                if (std::find(ra.locations.begin(), ra.locations.end(), e.dst) ==
                    ra.locations.end())
                    fail_at(tl, tc, "edge target '" + e.dst + "' is not a location of '" +
                                        ra.name + "'");
                e.reset = resolve_pred(e.reset, /*allow_primed=*/true, "edge reset");
            }
            for (const auto& loc : ra.locations) {
                ra.init[loc] = resolve_pred(ra.init[loc], false, "initial predicate");
                ra.inv[loc] = resolve_pred(ra.inv[loc], false, "invariant");
            }
            auto a = std::make_shared<Automaton>();
            a->name = ra.name;
            a->locations = ra.locations;
            a->init = ra.init;
            a->inv = ra.inv;
            a->edges = ra.edges;
            a->sync_actions = ra.sync_actions;
            model_.automata.push_back(std::move(a));
        }

        // Composition.
        if (!raw_composition_) {
            if (model_.automata.size() == 1) {
                model_.composition = Comp::mk_atom(model_.automata.front());
            } else if (model_.automata.empty()) {
                throw ParseError(1, 1, "model declares no automata");
            } else {
                throw ParseError(1, 1,
                                 "model with several automata needs a composition declaration");
            }
        } else {
            std::set<std::string> used;
            model_.composition = resolve_comp(raw_composition_, used);
        }
    }

    bool declared_action(const std::string& a) const {
        return std::find(model_.actions.begin(), model_.actions.end(), a) !=
               model_.actions.end();
    }

    std::set<std::string> location_universe() const {
        std::set<std::string> out;
        for (const auto& a : raw_automata_)
            out.insert(a.locations.begin(), a.locations.end());
        return out;
    }

    CompPtr resolve_comp(const std::shared_ptr<RawComp>& rc, std::set<std::string>& used) {
        switch (rc->kind) {
        case RawComp::Kind::Ref: {
            AutomatonPtr a = model_.find_automaton(rc->ref);
            if (!a) fail_at(rc->line, rc->col, "undeclared automaton '" + rc->ref + "'");
            if (!used.insert(rc->ref).second)
                fail_at(rc->line, rc->col,
                        "automaton '" + rc->ref + "' used twice in the composition");
            return Comp::mk_atom(a);
        }
        case RawComp::Kind::Par: {
            CompPtr l = resolve_comp(rc->left, used);
            CompPtr r = resolve_comp(rc->right, used);
            return Comp::mk_par(l, r);
        }
        case RawComp::Kind::Sync: {
            for (const auto& s : rc->sync_set)
                if (!declared_action(s))
                    fail_at(rc->line, rc->col, "undeclared action '" + s + "' in sync set");
            return Comp::mk_sync(rc->sync_set, resolve_comp(rc->child, used));
        }
        }
        throw ParseError(rc->line, rc->col, "corrupt composition");
    }

    // Resolves identifiers (variable vs location literal), enforces the
    // primed-ref placement rule and kind-checks the predicate.
    PredPtr resolve_pred(const PredPtr& p, bool allow_primed, const char* where) {
        PredPtr resolved = resolve_pred_rec(p, allow_primed, where);
        check_pred_kinds(resolved);
        return resolved;
    }

    PredPtr resolve_pred_rec(const PredPtr& p, bool allow_primed, const char* where) {
        switch (p->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
            return p;
        case Pred::Kind::Cmp: {
            auto q = std::make_shared<Pred>(*p);
            q->lhs = resolve_expr(p->lhs, allow_primed, where);
            q->rhs = resolve_expr(p->rhs, allow_primed, where);
            return q;
        }
        case Pred::Kind::And:
        case Pred::Kind::Or: {
            auto q = std::make_shared<Pred>(*p);
            q->left = resolve_pred_rec(p->left, allow_primed, where);
            q->right = resolve_pred_rec(p->right, allow_primed, where);
            return q;
        }
        case Pred::Kind::Member: {
            if (!model_.domains.has(p->member_var.name))
                fail_at(p->line, p->col,
                        "undeclared variable '" + p->member_var.name + "'");
            std::set<std::string> locs = all_locations();
            for (const auto& l : p->member_locs)
                if (!locs.count(l))
                    fail_at(p->line, p->col, "unknown location '" + l + "'");
            return p;
        }
        }
        throw ParseError(p->line, p->col, "corrupt predicate");
    }

    std::set<std::string> all_locations() const {
        std::set<std::string> out = location_universe();
        for (const auto& a : model_.automata)
            out.insert(a->locations.begin(), a->locations.end());
        for (const auto& [n, d] : model_.domains.vars)
            if (d.kind == Domain::Kind::Loc)
                out.insert(d.locations.begin(), d.locations.end());
        return out;
    }

    ExprPtr resolve_expr(const ExprPtr& e, bool allow_primed, const char* where) {
        switch (e->kind) {
        case Expr::Kind::Literal:
            return e;
        case Expr::Kind::Var: {
            if (model_.domains.has(e->var.name)) {
                if (e->var.primed && !allow_primed)
                    fail_at(e->line, e->col,
                            std::string("primed variable '") + e->var.to_string() +
                                "' is only allowed in edge resets, not in a " + where);
                return e;
            }
            if (e->var.primed)
                fail_at(e->line, e->col, "undeclared variable '" + e->var.name + "'");
            if (all_locations().count(e->var.name))
                return mk_literal(Value::location(e->var.name));
            fail_at(e->line, e->col, "undeclared name '" + e->var.name + "'");
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Concat: {
            auto q = std::make_shared<Expr>(*e);
            q->lhs = resolve_expr(e->lhs, allow_primed, where);
            q->rhs = resolve_expr(e->rhs, allow_primed, where);
            return q;
        }
        case Expr::Kind::ListLit: {
            auto q = std::make_shared<Expr>(*e);
            q->elements.clear();
            for (const auto& el : e->elements)
                q->elements.push_back(resolve_expr(el, allow_primed, where));
            return q;
        }
        }
        throw ParseError(e->line, e->col, "corrupt expression");
    }

    KindTag domain_kind(const Domain& d) const {
        switch (d.kind) {
        case Domain::Kind::Int: return KindTag::Int;
        case Domain::Kind::Bool: return KindTag::Bool;
        case Domain::Kind::List:
            return d.elem == Domain::Kind::Bool ? KindTag::ListBool : KindTag::ListInt;
        case Domain::Kind::Loc: return KindTag::Loc;
        case Domain::Kind::Explicit:
            fail_at(1, 1, "explicit domains cannot be declared");
        }
        return KindTag::Int;
    }

    KindTag expr_kind(const ExprPtr& e) {
        switch (e->kind) {
        case Expr::Kind::Literal:
            switch (e->literal.kind()) {
            case Value::Kind::Int: return KindTag::Int;
            case Value::Kind::Bool: return KindTag::Bool;
            case Value::Kind::List: return KindTag::ListEmpty;
            case Value::Kind::Loc: return KindTag::Loc;
            }
            return KindTag::Int;
        case Expr::Kind::Var: {
            const Domain* d = model_.domains.find(e->var.name);
            if (!d) fail_at(e->line, e->col, "undeclared variable '" + e->var.name + "'");
            return domain_kind(*d);
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            require_kind(e->lhs, KindTag::Int);
            require_kind(e->rhs, KindTag::Int);
            return KindTag::Int;
        }
        case Expr::Kind::ListLit: {
            KindTag elem = KindTag::Int;
            bool have = false;
            for (const auto& el : e->elements) {
                KindTag k = expr_kind(el);
                if (k != KindTag::Int && k != KindTag::Bool)
                    fail_at(el->line, el->col, "list elements must be int or bool");
                if (have && k != elem)
                    fail_at(el->line, el->col, "list elements must have one kind");
                elem = k;
                have = true;
            }
            if (!have) return KindTag::ListEmpty;
            return elem == KindTag::Bool ? KindTag::ListBool : KindTag::ListInt;
        }
        case Expr::Kind::Concat: {
            KindTag l = expr_kind(e->lhs);
            KindTag r = expr_kind(e->rhs);
            if (!is_list_kind(l))
                fail_at(e->line, e->col, "'++' on non-list operand (" + kind_name(l) + ")");
            if (!is_list_kind(r))
                fail_at(e->line, e->col, "'++' on non-list operand (" + kind_name(r) + ")");
            if (l == KindTag::ListEmpty) return r;
            if (r == KindTag::ListEmpty) return l;
            if (l != r) fail_at(e->line, e->col, "'++' on lists of different element kinds");
            return l;
        }
        }
        return KindTag::Int;
    }

    void require_kind(const ExprPtr& e, KindTag want) {
        KindTag got = expr_kind(e);
        if (got != want)
            fail_at(e->line, e->col,
                    "expected " + kind_name(want) + " operand, got " + kind_name(got));
    }

    bool kinds_comparable(KindTag a, KindTag b) const {
        if (a == b) return true;
        if (is_list_kind(a) && is_list_kind(b))
            return a == KindTag::ListEmpty || b == KindTag::ListEmpty;
        return false;
    }

    void check_pred_kinds(const PredPtr& p) {
        switch (p->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
            return;
        case Pred::Kind::Cmp: {
            if (p->op == CmpOp::Le) {
                require_kind(p->lhs, KindTag::Int);
                require_kind(p->rhs, KindTag::Int);
                return;
            }
            KindTag l = expr_kind(p->lhs);
            KindTag r = expr_kind(p->rhs);
            if (!kinds_comparable(l, r))
                fail_at(p->line, p->col,
                        "'==' on operands of different kinds (" + kind_name(l) + " vs " +
                            kind_name(r) + ")");
            return;
        }
        case Pred::Kind::And:
        case Pred::Kind::Or:
            check_pred_kinds(p->left);
            check_pred_kinds(p->right);
            return;
        case Pred::Kind::Member: {
            const Domain* d = model_.domains.find(p->member_var.name);
            if (!d || d->kind != Domain::Kind::Loc)
                fail_at(p->line, p->col,
                        "'in' applies to a location-pointer variable");
            return;
        }
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Model model_;
    std::vector<RawAutomaton> raw_automata_;
    std::shared_ptr<RawComp> raw_composition_;
    std::vector<std::pair<int, int>> edge_action_pos_;
    std::vector<std::pair<int, int>> edge_target_pos_;
};

} // namespace

Model parse_model(std::string_view text) { return Parser(text).parse(); }

PredPtr parse_predicate(std::string_view text, const Model& context, bool allow_primed) {
    return Parser(text).parse_single_predicate(context, allow_primed);
}

} // namespace ciflin
