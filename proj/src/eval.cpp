#include "afflog/eval.hpp"

#include <algorithm>

namespace afflog {

using Kind = Formula::Kind;

int eval_term(const Structure& s, const Term& t, const Assignment& a) {
    if (t.kind == Term::Kind::Var) {
        auto it = a.find(t.name);
        if (it == a.end()) throw DomainError("unbound variable '" + t.name + "'");
        return it->second;
    }
    auto table = s.functions.find(t.name);
    if (table == s.functions.end()) throw DomainError("unknown function symbol '" + t.name + "'");
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& arg : t.args) args.push_back(eval_term(s, arg, a));
    return table->second[tuple_index(args, s.carrier.size())];
}

namespace {

Rational eval_rec(const Structure& s, const FormulaPtr& f, Assignment& a) {
    switch (f->kind) {
        case Kind::One:
            return 1;
        case Kind::Atom: {
            std::vector<int> args;
            args.reserve(f->terms.size());
            for (const auto& t : f->terms) args.push_back(eval_term(s, t, a));
            if (f->symbol == "d") return s.dist(args[0], args[1]);
            auto table = s.predicates.find(f->symbol);
            if (table == s.predicates.end())
                throw DomainError("unknown predicate symbol '" + f->symbol + "'");
            return table->second[tuple_index(args, s.carrier.size())];
        }
        case Kind::Scale:
            return f->scalar * eval_rec(s, f->left, a);
        case Kind::Sum:
            return eval_rec(s, f->left, a) + eval_rec(s, f->right, a);
        case Kind::Max:
            return std::max(eval_rec(s, f->left, a), eval_rec(s, f->right, a));
        case Kind::Min:
            return std::min(eval_rec(s, f->left, a), eval_rec(s, f->right, a));
        case Kind::Abs:
            return rabs(eval_rec(s, f->left, a));
        case Kind::Sup:
        case Kind::Inf: {
            auto saved = a.find(f->symbol);
            std::optional<int> old;
            if (saved != a.end()) old = saved->second;
            std::optional<Rational> best;
            for (int c = 0; c < s.size(); ++c) {
                a[f->symbol] = c;
                Rational v = eval_rec(s, f->left, a);
                if (!best || (f->kind == Kind::Sup ? v > *best : v < *best)) best = v;
            }
            if (old)
                a[f->symbol] = *old;
            else
                a.erase(f->symbol);
            return *best;
        }
    }
    throw DomainError("unreachable formula kind");
}

}  // namespace

Rational eval(const Structure& s, const FormulaPtr& f, const Assignment& a) {
    if (s.carrier.empty()) throw DomainError("cannot evaluate in an empty structure");
    Assignment mutable_a = a;
    return eval_rec(s, f, mutable_a);
}

std::vector<Rational> eval_all(const Structure& s, const FormulaPtr& f,
                               const std::vector<std::string>& vars) {
    auto fv = free_vars(f);
    for (const auto& v : fv)
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw DomainError("free variable '" + v + "' missing from the declared order");
    std::vector<Rational> out;
    Assignment a;
    for_each_tuple(s.size(), static_cast<int>(vars.size()), [&](const std::vector<int>& tuple) {
        for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = tuple[i];
        out.push_back(eval_rec(s, f, a));
    });
    return out;
}

}  // namespace afflog
