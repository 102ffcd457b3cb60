#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afflog/rational.hpp"

namespace afflog {

struct PredicateSymbol {
    std::string name;
    int arity = 1;
    Rational lo;         // value interval [lo, hi]
    Rational hi;
    Rational lipschitz;  // linear modulus delta(eps) = eps / L
};

struct FunctionSymbol {
    std::string name;
    int arity = 1;
    Rational lipschitz;
};

/// A finite signature. The metric symbol `d` is always present implicitly,
/// with interval [0, metric_bound] and Lipschitz constant 1; it is not
/// listed among the predicates.
struct Signature {
    Rational metric_bound = 1;
    std::vector<PredicateSymbol> predicates;
    std::vector<FunctionSymbol> functions;

    const PredicateSymbol* find_predicate(const std::string& name) const;
    const FunctionSymbol* find_function(const std::string& name) const;
    bool has_symbol(const std::string& name) const;

    /// Unique symbol names, `d` reserved, lo <= hi, positive Lipschitz
    /// constants, nonnegative arities.
    std::vector<std::string> check() const;

    bool operator==(const Signature&) const = default;
};

bool operator==(const PredicateSymbol&, const PredicateSymbol&);
bool operator==(const FunctionSymbol&, const FunctionSymbol&);

/// A finite metric structure. The carrier order is part of the data and
/// fixes all iteration and output order. Tables are flat, row-major in
/// carrier order (last argument fastest).
struct Structure {
    Signature sig;
    std::vector<std::string> carrier;
    std::vector<Rational> metric;  // size n*n
    std::map<std::string, std::vector<Rational>> predicates;
    std::map<std::string, std::vector<int>> functions;  // entries index carrier

    int size() const { return static_cast<int>(carrier.size()); }
    const Rational& dist(int a, int b) const { return metric[a * carrier.size() + b]; }
    int element_index(const std::string& label) const;  // -1 if absent

    bool operator==(const Structure&) const = default;
};

struct FinProbSpace {
    struct Atom {
        std::string label;
        Rational weight;
        bool operator==(const Atom&) const = default;
    };
    std::vector<Atom> atoms;

    int size() const { return static_cast<int>(atoms.size()); }
    std::vector<std::string> check() const;  // positive weights summing to 1

    bool operator==(const FinProbSpace&) const = default;
};

/// Flat-table index of a tuple (row-major, carrier order).
std::size_t tuple_index(const std::vector<int>& tuple, std::size_t carrier_size);

/// Enumerates all `arity`-tuples over {0,...,n-1} in table order, calling
/// fn(tuple) for each.
template <typename Fn>
void for_each_tuple(int carrier_size, int arity, Fn&& fn) {
    std::vector<int> tuple(arity, 0);
    while (true) {
        fn(const_cast<const std::vector<int>&>(tuple));
        int pos = arity - 1;
        while (pos >= 0 && ++tuple[pos] == carrier_size) tuple[pos--] = 0;
        if (pos < 0) break;
    }
}

/// Full structural audit: metric axioms, table sizes and bounds, Lipschitz
/// conditions for all symbols over all tuple pairs. Violations are data,
/// not errors; an empty report means the structure is legal.
std::vector<std::string> validate_structure(const Structure& s);

// --- JSON serialization (canonical: keys sorted, rationals reduced) ---

Structure load_structure(const std::string& json_text);
std::string store_structure(const Structure& s);

FinProbSpace load_prob_space(const std::string& json_text);
std::string store_prob_space(const FinProbSpace& sp);

}  // namespace afflog
