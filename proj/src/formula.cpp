#include "afflog/formula.hpp"

#include <algorithm>
#include <cctype>

namespace afflog {

using Kind = Formula::Kind;

Term t_var(std::string name) { return Term{Term::Kind::Var, std::move(name), {}}; }
Term t_func(std::string name, std::vector<Term> args) {
    return Term{Term::Kind::Func, std::move(name), std::move(args)};
}

namespace {
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr f_one() {
    static FormulaPtr one = make(Formula{Kind::One, {}, {}, {}, nullptr, nullptr});
    return one;
}
FormulaPtr f_atom(std::string predicate, std::vector<Term> terms) {
    return make(Formula{Kind::Atom, std::move(predicate), {}, std::move(terms), nullptr, nullptr});
}
FormulaPtr f_dist(Term a, Term b) { return f_atom("d", {std::move(a), std::move(b)}); }
FormulaPtr f_scale(Rational r, FormulaPtr f) {
    return make(Formula{Kind::Scale, {}, std::move(r), {}, std::move(f), nullptr});
}
FormulaPtr f_sum(FormulaPtr a, FormulaPtr b) {
    return make(Formula{Kind::Sum, {}, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr f_max(FormulaPtr a, FormulaPtr b) {
    return make(Formula{Kind::Max, {}, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr f_min(FormulaPtr a, FormulaPtr b) {
    return make(Formula{Kind::Min, {}, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr f_abs(FormulaPtr f) {
    return make(Formula{Kind::Abs, {}, {}, {}, std::move(f), nullptr});
}
FormulaPtr f_sup(std::string var, FormulaPtr f) {
    return make(Formula{Kind::Sup, std::move(var), {}, {}, std::move(f), nullptr});
}
FormulaPtr f_inf(std::string var, FormulaPtr f) {
    return make(Formula{Kind::Inf, std::move(var), {}, {}, std::move(f), nullptr});
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->symbol != b->symbol || a->scalar != b->scalar ||
        a->terms != b->terms)
        return false;
    return equal(a->left, b->left) && equal(a->right, b->right);
}

// --- Parser ---

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos));
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool ident_ahead() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    std::string ident() {
        skip_ws();
        if (!ident_ahead()) fail("expected identifier");
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
    bool number_ahead() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c));
    }
    Integer integer() {
        skip_ws();
        if (!number_ahead()) fail("expected number");
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return Integer(text.substr(start, pos - start));
    }
    Rational rational() {
        Integer num = integer();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            Integer den = integer();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }
};

struct Parser {
    Lexer lex;
    const Signature& sig;

    Parser(const Signature& s, const std::string& text) : lex(text), sig(s) {}

    Term term() {
        std::string name = lex.ident();
        if (lex.peek() == '(') {
            const FunctionSymbol* f = sig.find_function(name);
            if (!f) lex.fail("unknown function symbol '" + name + "'");
            lex.expect('(');
            std::vector<Term> args;
            if (lex.peek() != ')') {
                args.push_back(term());
                while (lex.eat(',')) args.push_back(term());
            }
            lex.expect(')');
            if (static_cast<int>(args.size()) != f->arity)
                lex.fail("arity mismatch for '" + name + "'");
            return t_func(name, std::move(args));
        }
        if (const FunctionSymbol* f = sig.find_function(name)) {
            if (f->arity != 0) lex.fail("function symbol '" + name + "' used without arguments");
            return t_func(name);
        }
        if (sig.find_predicate(name) || name == "d")
            lex.fail("predicate symbol '" + name + "' used as a term");
        return t_var(name);
    }

    FormulaPtr atom() {
        if (lex.eat('(')) {
            FormulaPtr f = formula();
            lex.expect(')');
            return f;
        }
        if (lex.number_ahead()) {
            Rational r = lex.rational();
            if (r == 1) return f_one();
            lex.fail("expected '1' or 'r * <atom>'");
        }
        std::string name = lex.ident();
        if (name == "max" || name == "min") {
            lex.expect('(');
            FormulaPtr a = formula();
            lex.expect(',');
            FormulaPtr b = formula();
            lex.expect(')');
            return name == "max" ? f_max(a, b) : f_min(a, b);
        }
        if (name == "abs") {
            lex.expect('(');
            FormulaPtr a = formula();
            lex.expect(')');
            return f_abs(a);
        }
        int arity;
        if (name == "d") {
            arity = 2;
        } else if (const PredicateSymbol* p = sig.find_predicate(name)) {
            arity = p->arity;
        } else {
            lex.fail("unknown predicate symbol '" + name + "'");
        }
        lex.expect('(');
        std::vector<Term> args;
        if (lex.peek() != ')') {
            args.push_back(term());
            while (lex.eat(',')) args.push_back(term());
        }
        lex.expect(')');
        if (static_cast<int>(args.size()) != arity) lex.fail("arity mismatch for '" + name + "'");
        return f_atom(name, std::move(args));
    }

    FormulaPtr prod() {
        bool negative = false;
        if (lex.peek() == '-') {
            lex.eat('-');
            negative = true;
        }
        if (lex.number_ahead()) {
            std::size_t mark = lex.pos;
            Rational r = lex.rational();
            if (lex.eat('*')) {
                if (negative) r = -r;
                return f_scale(r, atom());
            }
            lex.pos = mark;  // bare number: fall through to atom() which accepts "1"
            FormulaPtr a = atom();
            return negative ? f_scale(-1, a) : a;
        }
        FormulaPtr a = atom();
        return negative ? f_scale(-1, a) : a;
    }

    FormulaPtr sum() {
        FormulaPtr acc = prod();
        while (true) {
            if (lex.eat('+')) {
                acc = f_sum(acc, prod());
            } else if (lex.peek() == '-') {
                // binary minus: a - b == a + (-1) * b
                lex.eat('-');
                FormulaPtr rhs = prod();
                acc = f_sum(acc, f_scale(-1, rhs));
            } else {
                break;
            }
        }
        return acc;
    }

    FormulaPtr formula() {
        if (lex.ident_ahead()) {
            std::size_t mark = lex.pos;
            std::string word = lex.ident();
            if (word == "sup" || word == "inf") {
                std::string var = lex.ident();
                if (sig.has_symbol(var)) lex.fail("bound variable '" + var + "' clashes with a symbol");
                lex.expect('.');
                FormulaPtr body = formula();
                return word == "sup" ? f_sup(var, body) : f_inf(var, body);
            }
            lex.pos = mark;
        }
        return sum();
    }

    FormulaPtr parse() {
        FormulaPtr f = formula();
        if (lex.peek() != '\0') lex.fail("trailing input");
        return f;
    }
};

}  // namespace

FormulaPtr parse_formula(const Signature& sig, const std::string& text) {
    return Parser(sig, text).parse();
}

// --- Printer ---

namespace {

std::string print_term(const Term& t) {
    if (t.args.empty()) return t.name;  // variable or constant
    std::string out = t.name + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += print_term(t.args[i]);
    }
    return out + ")";
}

bool atom_level(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::One:
        case Kind::Atom:
        case Kind::Max:
        case Kind::Min:
        case Kind::Abs:
            return true;
        default:
            return false;
    }
}

bool prod_level(const FormulaPtr& f) { return atom_level(f) || f->kind == Kind::Scale; }

std::string atomize(const FormulaPtr& f) {
    return atom_level(f) ? print_formula(f) : "(" + print_formula(f) + ")";
}

std::string prodize(const FormulaPtr& f) {
    return prod_level(f) ? print_formula(f) : "(" + print_formula(f) + ")";
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::One:
            return "1";
        case Kind::Atom: {
            std::string out = f->symbol + "(";
            for (std::size_t i = 0; i < f->terms.size(); ++i) {
                if (i) out += ", ";
                out += print_term(f->terms[i]);
            }
            return out + ")";
        }
        case Kind::Scale:
            return format_rational(f->scalar) + " * " + atomize(f->left);
        case Kind::Sum:
            return prodize(f->left) + " + " + prodize(f->right);
        case Kind::Max:
            return "max(" + print_formula(f->left) + ", " + print_formula(f->right) + ")";
        case Kind::Min:
            return "min(" + print_formula(f->left) + ", " + print_formula(f->right) + ")";
        case Kind::Abs:
            return "abs(" + print_formula(f->left) + ")";
        case Kind::Sup:
            return "sup " + f->symbol + ". " + print_formula(f->left);
        case Kind::Inf:
            return "inf " + f->symbol + ". " + print_formula(f->left);
    }
    return {};
}

// --- Variables and substitution ---

std::set<std::string> term_vars(const Term& t) {
    std::set<std::string> out;
    if (t.kind == Term::Kind::Var) {
        out.insert(t.name);
    } else {
        for (const auto& a : t.args) {
            auto sub = term_vars(a);
            out.insert(sub.begin(), sub.end());
        }
    }
    return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> out;
    switch (f->kind) {
        case Kind::One:
            break;
        case Kind::Atom:
            for (const auto& t : f->terms) {
                auto sub = term_vars(t);
                out.insert(sub.begin(), sub.end());
            }
            break;
        case Kind::Sup:
        case Kind::Inf:
            out = free_vars(f->left);
            out.erase(f->symbol);
            break;
        default:
            if (f->left) out = free_vars(f->left);
            if (f->right) {
                auto sub = free_vars(f->right);
                out.insert(sub.begin(), sub.end());
            }
    }
    return out;
}

namespace {

Term subst_term(const Term& t, const std::string& var, const Term& repl) {
    if (t.kind == Term::Kind::Var) return t.name == var ? repl : t;
    Term out = t;
    for (auto& a : out.args) a = subst_term(a, var, repl);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!used.count(candidate)) return candidate;
    }
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& t) {
    switch (f->kind) {
        case Kind::One:
            return f;
        case Kind::Atom: {
            std::vector<Term> terms = f->terms;
            for (auto& tm : terms) tm = subst_term(tm, var, t);
            return f_atom(f->symbol, std::move(terms));
        }
        case Kind::Sup:
        case Kind::Inf: {
            if (f->symbol == var) return f;  // bound, no free occurrences below
            auto body_fv = free_vars(f->left);
            if (!body_fv.count(var)) return f;
            std::string bound = f->symbol;
            FormulaPtr body = f->left;
            auto repl_vars = term_vars(t);
            if (repl_vars.count(bound)) {
                std::set<std::string> used = body_fv;
                used.insert(repl_vars.begin(), repl_vars.end());
                std::string renamed = fresh_name(bound, used);
                body = substitute(body, bound, t_var(renamed));
                bound = renamed;
            }
            body = substitute(body, var, t);
            return f->kind == Kind::Sup ? f_sup(bound, body) : f_inf(bound, body);
        }
        case Kind::Scale:
            return f_scale(f->scalar, substitute(f->left, var, t));
        case Kind::Sum:
            return f_sum(substitute(f->left, var, t), substitute(f->right, var, t));
        case Kind::Max:
            return f_max(substitute(f->left, var, t), substitute(f->right, var, t));
        case Kind::Min:
            return f_min(substitute(f->left, var, t), substitute(f->right, var, t));
        case Kind::Abs:
            return f_abs(substitute(f->left, var, t));
    }
    return f;
}

// --- Classification ---

std::string to_string(FormulaClass c) {
    switch (c) {
        case FormulaClass::Affine: return "affine";
        case FormulaClass::Convex: return "convex";
        case FormulaClass::Concave: return "concave";
        case FormulaClass::DeltaConvex: return "delta-convex";
        case FormulaClass::Continuous: return "continuous";
    }
    return {};
}

bool is_affine(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::Max:
        case Kind::Min:
        case Kind::Abs:
            return false;
        case Kind::One:
        case Kind::Atom:
            return true;
        default:
            return (!f->left || is_affine(f->left)) && (!f->right || is_affine(f->right));
    }
}

namespace {

constexpr std::size_t kRewriteCap = 1024;

using List = std::vector<FormulaPtr>;
using MaybeList = std::optional<List>;

FormulaPtr affine_zero() { return f_scale(0, f_one()); }

MaybeList cross_sum(const List& a, const List& b) {
    if (a.size() * b.size() > kRewriteCap) return std::nullopt;
    List out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(f_sum(x, y));
    return out;
}

List scale_list(const Rational& r, const List& a) {
    List out;
    for (const auto& x : a) out.push_back(f_scale(r, x));
    return out;
}

MaybeList max_list(const FormulaPtr& f);
MaybeList min_list(const FormulaPtr& f);

// f as a max of affine formulas, by node-local rewriting.
MaybeList max_list(const FormulaPtr& f) {
    if (is_affine(f)) return List{f};
    switch (f->kind) {
        case Kind::Max: {
            auto a = max_list(f->left), b = max_list(f->right);
            if (!a || !b || a->size() + b->size() > kRewriteCap) return std::nullopt;
            a->insert(a->end(), b->begin(), b->end());
            return a;
        }
        case Kind::Abs: {
            // |g| = max(g, -g)
            auto a = max_list(f->left), b = min_list(f->left);
            if (!a || !b || a->size() + b->size() > kRewriteCap) return std::nullopt;
            for (const auto& x : *b) a->push_back(f_scale(-1, x));
            return a;
        }
        case Kind::Sum: {
            auto a = max_list(f->left), b = max_list(f->right);
            if (!a || !b) return std::nullopt;
            return cross_sum(*a, *b);
        }
        case Kind::Scale: {
            if (f->scalar == 0) return List{affine_zero()};
            if (f->scalar > 0) {
                auto a = max_list(f->left);
                if (!a) return std::nullopt;
                return scale_list(f->scalar, *a);
            }
            auto a = min_list(f->left);
            if (!a) return std::nullopt;
            return scale_list(f->scalar, *a);
        }
        default:
            return std::nullopt;  // lattice node under a quantifier
    }
}

MaybeList min_list(const FormulaPtr& f) {
    if (is_affine(f)) return List{f};
    switch (f->kind) {
        case Kind::Min: {
            auto a = min_list(f->left), b = min_list(f->right);
            if (!a || !b || a->size() + b->size() > kRewriteCap) return std::nullopt;
            a->insert(a->end(), b->begin(), b->end());
            return a;
        }
        case Kind::Sum: {
            auto a = min_list(f->left), b = min_list(f->right);
            if (!a || !b) return std::nullopt;
            return cross_sum(*a, *b);
        }
        case Kind::Scale: {
            if (f->scalar == 0) return List{affine_zero()};
            if (f->scalar > 0) {
                auto a = min_list(f->left);
                if (!a) return std::nullopt;
                return scale_list(f->scalar, *a);
            }
            auto a = max_list(f->left);
            if (!a) return std::nullopt;
            return scale_list(f->scalar, *a);
        }
        default:
            return std::nullopt;
    }
}

// f as (max A) - (max B), a difference of convex formulas.
using DcPair = std::pair<List, List>;

std::optional<DcPair> dc_pair(const FormulaPtr& f) {
    if (is_affine(f)) return DcPair{{f}, {affine_zero()}};
    switch (f->kind) {
        case Kind::Sum: {
            auto a = dc_pair(f->left), b = dc_pair(f->right);
            if (!a || !b) return std::nullopt;
            auto pos = cross_sum(a->first, b->first);
            auto neg = cross_sum(a->second, b->second);
            if (!pos || !neg) return std::nullopt;
            return DcPair{*pos, *neg};
        }
        case Kind::Scale: {
            if (f->scalar == 0) return DcPair{{affine_zero()}, {affine_zero()}};
            auto a = dc_pair(f->left);
            if (!a) return std::nullopt;
            Rational m = rabs(f->scalar);
            if (f->scalar > 0) return DcPair{scale_list(m, a->first), scale_list(m, a->second)};
            return DcPair{scale_list(m, a->second), scale_list(m, a->first)};
        }
        case Kind::Max: {
            // max(u - v, s - t) = max(u + t, s + v) - (v + t)
            auto a = dc_pair(f->left), b = dc_pair(f->right);
            if (!a || !b) return std::nullopt;
            auto ut = cross_sum(a->first, b->second);
            auto sv = cross_sum(b->first, a->second);
            auto vt = cross_sum(a->second, b->second);
            if (!ut || !sv || !vt || ut->size() + sv->size() > kRewriteCap) return std::nullopt;
            ut->insert(ut->end(), sv->begin(), sv->end());
            return DcPair{*ut, *vt};
        }
        case Kind::Min: {
            auto neg = dc_pair(f_max(f_scale(-1, f->left), f_scale(-1, f->right)));
            if (!neg) return std::nullopt;
            return DcPair{neg->second, neg->first};
        }
        case Kind::Abs:
            return dc_pair(f_max(f->left, f_scale(-1, f->left)));
        default:
            return std::nullopt;
    }
}

}  // namespace

std::optional<std::vector<FormulaPtr>> as_max_of_affine(const FormulaPtr& f) {
    return max_list(f);
}
std::optional<std::vector<FormulaPtr>> as_min_of_affine(const FormulaPtr& f) {
    return min_list(f);
}

FormulaClass classify(const FormulaPtr& f) {
    if (is_affine(f)) return FormulaClass::Affine;
    if (max_list(f)) return FormulaClass::Convex;
    if (min_list(f)) return FormulaClass::Concave;
    if (dc_pair(f)) return FormulaClass::DeltaConvex;
    return FormulaClass::Continuous;
}

// --- Prenex normal form ---

namespace {

void collect_names(const FormulaPtr& f, std::set<std::string>& names) {
    if (f->kind == Kind::Atom) {
        for (const auto& t : f->terms) {
            auto vs = term_vars(t);
            names.insert(vs.begin(), vs.end());
        }
        return;
    }
    if (f->kind == Kind::Sup || f->kind == Kind::Inf) names.insert(f->symbol);
    if (f->left) collect_names(f->left, names);
    if (f->right) collect_names(f->right, names);
}

// Renames bound variables so that every binder introduces a distinct name,
// disjoint from all free variables. `used` holds names no binder may take;
// `avoid` additionally blocks every name occurring anywhere in the formula
// so fresh names never collide with binders seen later.
FormulaPtr rectify(const FormulaPtr& f, std::set<std::string>& used,
                   const std::set<std::string>& avoid) {
    switch (f->kind) {
        case Kind::One:
        case Kind::Atom:
            return f;
        case Kind::Sup:
        case Kind::Inf: {
            std::string name = f->symbol;
            FormulaPtr body = f->left;
            if (used.count(name)) {
                std::set<std::string> blocked = avoid;
                blocked.insert(used.begin(), used.end());
                std::string renamed = fresh_name(name, blocked);
                body = substitute(body, name, t_var(renamed));
                name = renamed;
            }
            used.insert(name);
            body = rectify(body, used, avoid);
            return f->kind == Kind::Sup ? f_sup(name, body) : f_inf(name, body);
        }
        case Kind::Scale:
            return f_scale(f->scalar, rectify(f->left, used, avoid));
        case Kind::Abs:
            return f_abs(rectify(f->left, used, avoid));
        case Kind::Sum:
            return f_sum(rectify(f->left, used, avoid), rectify(f->right, used, avoid));
        case Kind::Max:
            return f_max(rectify(f->left, used, avoid), rectify(f->right, used, avoid));
        case Kind::Min:
            return f_min(rectify(f->left, used, avoid), rectify(f->right, used, avoid));
    }
    return f;
}

struct Prenexed {
    std::vector<std::pair<bool, std::string>> prefix;  // (is_sup, var)
    FormulaPtr matrix;
};

bool has_quantifier(const FormulaPtr& f) {
    if (f->kind == Kind::Sup || f->kind == Kind::Inf) return true;
    return (f->left && has_quantifier(f->left)) || (f->right && has_quantifier(f->right));
}

Prenexed hoist(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::One:
        case Kind::Atom:
            return {{}, f};
        case Kind::Sup:
        case Kind::Inf: {
            Prenexed p = hoist(f->left);
            p.prefix.insert(p.prefix.begin(), {f->kind == Kind::Sup, f->symbol});
            return p;
        }
        case Kind::Scale: {
            Prenexed p = hoist(f->left);
            if (f->scalar < 0)
                for (auto& q : p.prefix) q.first = !q.first;
            p.matrix = f_scale(f->scalar, p.matrix);
            return p;
        }
        case Kind::Abs:
            // quantifier-containing Abs nodes are expanded before hoisting
            return {{}, f};
        case Kind::Sum:
        case Kind::Max:
        case Kind::Min: {
            Prenexed a = hoist(f->left);
            Prenexed b = hoist(f->right);
            // Bound variables are globally distinct after rectification except
            // when Abs duplicated its body; re-rectify in that case.
            a.prefix.insert(a.prefix.end(), b.prefix.begin(), b.prefix.end());
            FormulaPtr m = f->kind == Kind::Sum   ? f_sum(a.matrix, b.matrix)
                           : f->kind == Kind::Max ? f_max(a.matrix, b.matrix)
                                                  : f_min(a.matrix, b.matrix);
            return {std::move(a.prefix), std::move(m)};
        }
    }
    return {{}, f};
}

// |g| with quantifiers inside becomes max(g, -g) so the quantifiers can hoist.
FormulaPtr expand_abs(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::Abs: {
            FormulaPtr b = expand_abs(f->left);
            if (has_quantifier(b)) return f_max(b, f_scale(-1, b));
            return f_abs(b);
        }
        case Kind::Scale:
            return f_scale(f->scalar, expand_abs(f->left));
        case Kind::Sum:
            return f_sum(expand_abs(f->left), expand_abs(f->right));
        case Kind::Max:
            return f_max(expand_abs(f->left), expand_abs(f->right));
        case Kind::Min:
            return f_min(expand_abs(f->left), expand_abs(f->right));
        case Kind::Sup:
            return f_sup(f->symbol, expand_abs(f->left));
        case Kind::Inf:
            return f_inf(f->symbol, expand_abs(f->left));
        default:
            return f;
    }
}

}  // namespace

FormulaPtr prenex(const FormulaPtr& f) {
    FormulaClass cls = classify(f);
    if (cls == FormulaClass::Continuous)
        throw DomainError("prenex requires an affine or delta-convex formula, got " + to_string(cls));
    FormulaPtr expanded = expand_abs(f);
    std::set<std::string> avoid;
    collect_names(expanded, avoid);
    std::set<std::string> used = free_vars(expanded);
    FormulaPtr rect = rectify(expanded, used, avoid);
    Prenexed p = hoist(rect);
    FormulaPtr out = p.matrix;
    for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
        out = it->first ? f_sup(it->second, out) : f_inf(it->second, out);
    return out;
}

// --- Structural bounds ---

std::pair<Rational, Rational> value_interval(const Signature& sig, const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::One:
            return {1, 1};
        case Kind::Atom: {
            if (f->symbol == "d") return {0, sig.metric_bound};
            const PredicateSymbol* p = sig.find_predicate(f->symbol);
            if (!p) throw DomainError("unknown predicate symbol '" + f->symbol + "'");
            return {p->lo, p->hi};
        }
        case Kind::Scale: {
            auto [lo, hi] = value_interval(sig, f->left);
            if (f->scalar >= 0) return {f->scalar * lo, f->scalar * hi};
            return {f->scalar * hi, f->scalar * lo};
        }
        case Kind::Sum: {
            auto [lo1, hi1] = value_interval(sig, f->left);
            auto [lo2, hi2] = value_interval(sig, f->right);
            return {lo1 + lo2, hi1 + hi2};
        }
        case Kind::Max: {
            auto [lo1, hi1] = value_interval(sig, f->left);
            auto [lo2, hi2] = value_interval(sig, f->right);
            return {std::max(lo1, lo2), std::max(hi1, hi2)};
        }
        case Kind::Min: {
            auto [lo1, hi1] = value_interval(sig, f->left);
            auto [lo2, hi2] = value_interval(sig, f->right);
            return {std::min(lo1, lo2), std::min(hi1, hi2)};
        }
        case Kind::Abs: {
            auto [lo, hi] = value_interval(sig, f->left);
            Rational alo = (lo <= 0 && hi >= 0) ? Rational(0) : std::min(rabs(lo), rabs(hi));
            return {alo, std::max(rabs(lo), rabs(hi))};
        }
        case Kind::Sup:
        case Kind::Inf:
            return value_interval(sig, f->left);
    }
    return {0, 0};
}

namespace {

void term_lipschitz(const Signature& sig, const Term& t, const Rational& factor,
                    std::map<std::string, Rational>& acc) {
    if (t.kind == Term::Kind::Var) {
        acc[t.name] += factor;
        return;
    }
    const FunctionSymbol* f = sig.find_function(t.name);
    if (!f) throw DomainError("unknown function symbol '" + t.name + "'");
    for (const auto& a : t.args) term_lipschitz(sig, a, factor * f->lipschitz, acc);
}

void merge_max(std::map<std::string, Rational>& into, const std::map<std::string, Rational>& other) {
    for (const auto& [k, v] : other) {
        auto it = into.find(k);
        if (it == into.end())
            into.emplace(k, v);
        else
            it->second = std::max(it->second, v);
    }
}

}  // namespace

std::map<std::string, Rational> lipschitz_map(const Signature& sig, const FormulaPtr& f) {
    std::map<std::string, Rational> out;
    switch (f->kind) {
        case Kind::One:
            break;
        case Kind::Atom: {
            Rational l = 1;
            if (f->symbol != "d") {
                const PredicateSymbol* p = sig.find_predicate(f->symbol);
                if (!p) throw DomainError("unknown predicate symbol '" + f->symbol + "'");
                l = p->lipschitz;
            }
            for (const auto& t : f->terms) term_lipschitz(sig, t, l, out);
            break;
        }
        case Kind::Scale: {
            out = lipschitz_map(sig, f->left);
            for (auto& [_, v] : out) v *= rabs(f->scalar);
            break;
        }
        case Kind::Sum: {
            out = lipschitz_map(sig, f->left);
            for (const auto& [k, v] : lipschitz_map(sig, f->right)) out[k] += v;
            break;
        }
        case Kind::Max:
        case Kind::Min: {
            out = lipschitz_map(sig, f->left);
            merge_max(out, lipschitz_map(sig, f->right));
            break;
        }
        case Kind::Abs:
            out = lipschitz_map(sig, f->left);
            break;
        case Kind::Sup:
        case Kind::Inf:
            out = lipschitz_map(sig, f->left);
            out.erase(f->symbol);
            break;
    }
    return out;
}

Rational lipschitz_bound(const Signature& sig, const FormulaPtr& f) {
    Rational best = 0;
    for (const auto& [_, v] : lipschitz_map(sig, f)) best = std::max(best, v);
    return best;
}

}  // namespace afflog
