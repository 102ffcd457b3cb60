#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "afflog/core.hpp"

namespace afflog {

struct Term {
    enum class Kind { Var, Func };
    Kind kind = Kind::Var;
    std::string name;
    std::vector<Term> args;  // empty for variables and constants

    bool operator==(const Term&) const = default;
};

Term t_var(std::string name);
Term t_func(std::string name, std::vector<Term> args = {});

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Affine fragment: One, Atom, Scale, Sum, Sup, Inf.
/// Max, Min and Abs are the continuous-only lattice connectives.
class Formula {
public:
    enum class Kind { One, Atom, Scale, Sum, Max, Min, Abs, Sup, Inf };

    Kind kind;
    std::string symbol;       // Atom: predicate name ("d" for the metric); Sup/Inf: variable
    Rational scalar;          // Scale
    std::vector<Term> terms;  // Atom
    FormulaPtr left, right;
};

FormulaPtr f_one();
FormulaPtr f_atom(std::string predicate, std::vector<Term> terms);
FormulaPtr f_dist(Term a, Term b);
FormulaPtr f_scale(Rational r, FormulaPtr f);
FormulaPtr f_sum(FormulaPtr a, FormulaPtr b);
FormulaPtr f_max(FormulaPtr a, FormulaPtr b);
FormulaPtr f_min(FormulaPtr a, FormulaPtr b);
FormulaPtr f_abs(FormulaPtr f);
FormulaPtr f_sup(std::string var, FormulaPtr f);
FormulaPtr f_inf(std::string var, FormulaPtr f);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Parses the textual formula language against a signature (needed to
/// resolve identifiers into predicates, functions, constants, variables).
/// Throws ParseError with position on syntax errors, unknown symbols, and
/// arity mismatches.
FormulaPtr parse_formula(const Signature& sig, const std::string& text);

/// Canonical printer; parse(print(f)) is structurally equal to f.
std::string print_formula(const FormulaPtr& f);

std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> term_vars(const Term& t);

/// Capture-avoiding substitution of `t` for free occurrences of `var`.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& t);

enum class FormulaClass { Affine, Convex, Concave, DeltaConvex, Continuous };

std::string to_string(FormulaClass c);

/// True when f contains no Max/Min/Abs node.
bool is_affine(const FormulaPtr& f);

/// Most specific class derivable by node-local rewriting (sound, not
/// complete: a semantically affine formula written with lattice nodes may
/// be reported as Continuous).
FormulaClass classify(const FormulaPtr& f);

/// Attempted rewrite of f into a finite max of affine formulas (the convex
/// witness). Empty when no such rewrite is found within the size cap.
std::optional<std::vector<FormulaPtr>> as_max_of_affine(const FormulaPtr& f);
std::optional<std::vector<FormulaPtr>> as_min_of_affine(const FormulaPtr& f);

/// Prenex normal form: all quantifiers outermost, bound variables made
/// distinct, evaluation-equivalent on every finite structure. Requires
/// classify(f) != Continuous.
FormulaPtr prenex(const FormulaPtr& f);

/// Structurally derived value interval of f over structures of `sig`.
std::pair<Rational, Rational> value_interval(const Signature& sig, const FormulaPtr& f);

/// Structurally derived per-variable Lipschitz constants (w.r.t. the sum
/// metric on tuples).
std::map<std::string, Rational> lipschitz_map(const Signature& sig, const FormulaPtr& f);

/// max over free variables of the per-variable constant (0 for sentences).
Rational lipschitz_bound(const Signature& sig, const FormulaPtr& f);

}  // namespace afflog
