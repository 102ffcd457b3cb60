#pragma once

#include "afflog/convex.hpp"
#include "afflog/modelalg.hpp"

namespace afflog {

/// Finite probability algebra specification: atom weights plus an optional
/// prefix of atom names exposed as constants.
struct PrASpec {
    std::vector<Rational> weights;
    std::vector<std::string> named;  // names for atoms 0..named.size()-1

    std::vector<std::string> check() const;
};

/// Power-set measure algebra: carrier index = atom bitmask (bit i = atom
/// i), predicates {mu}, functions {join, meet, compl, zero, one} plus the
/// named atom constants, metric d(x,y) = mu(x xor y).
struct PraAlgebra {
    PrASpec spec;
    Structure structure;

    int atoms() const { return static_cast<int>(spec.weights.size()); }
};

PraAlgebra build_pra(const PrASpec& spec, int atom_cap = 10);

/// Cell masses nu(eps) = mu of the intersection of a_i (eps_i = 0) and
/// not a_i (eps_i = 1), indexed by the eps bitmask with eps_0 most
/// significant. Sums to 1.
std::vector<Rational> pra_cell_masses(const PraAlgebra& alg, const std::vector<int>& tuple);

/// The cell measure as a finitely supported measure on {0,1}^n (zero cells
/// dropped), support ordered by eps index.
FinMeasure pra_type_measure(const PraAlgebra& alg, const std::vector<int>& tuple);

/// A finite classical structure: 0/1 relations over a finite universe with
/// the 0-1 metric.
struct ClassicalSpec {
    std::vector<std::string> universe;
    struct Relation {
        std::string name;
        int arity = 1;
        std::vector<Rational> table;  // 0/1 entries, row-major, last argument fastest
    };
    std::vector<Relation> relations;
};

Structure build_classical(const ClassicalSpec& spec);

/// One condition per predicate symbol (and the metric): sup over the
/// arguments of min(P, 1 - P). A structure is classical iff every
/// condition evaluates to 0.
std::vector<FormulaPtr> classicality_conditions(const Signature& sig);

/// Finite measure-preserving system: weighted atoms with a
/// weight-preserving permutation (the generator of the action).
struct PMPSystem {
    FinProbSpace base;
    std::vector<int> transform;  // atom i maps to atom transform[i]

    std::vector<std::string> check() const;
};

/// PrA structure on the power-set algebra with unary function symbols T
/// (the transform) and Tinv (its inverse).
struct PmpAlgebra {
    PMPSystem system;
    Structure structure;
};

PmpAlgebra build_pmp_z(const PMPSystem& system, int atom_cap = 8);

/// Orbits of the atom permutation: each orbit starts at its least atom and
/// follows the transform; orbits ordered by least atom.
std::vector<std::vector<int>> orbits(const PMPSystem& system);

/// Ergodic iff the permutation has a single orbit (equivalently, the only
/// invariant algebra elements are 0 and 1).
bool is_ergodic(const PMPSystem& system);

struct ErgodicComponent {
    Rational weight;   // orbit mass
    PMPSystem system;  // conditional (renormalized) restriction to the orbit
};

struct ErgodicDecomposition {
    std::vector<ErgodicComponent> components;
    // Bijection from the combined carrier of the component algebras onto
    // the carrier of build_pmp_z(system): a section (S_1,..,S_r) maps to
    // the union of the orbit subsets.
    std::vector<std::size_t> iso;
    bool recombination_ok = false;  // all tables match through iso, exactly
};

ErgodicDecomposition ergodic_decompose(const PMPSystem& system, int atom_cap = 8);

/// Complete isomorphism invariant of a finite system: the sorted multiset
/// of (orbit length, orbit mass).
std::vector<std::pair<int, Rational>> canonical_form(const PMPSystem& system);

bool isomorphic(const PMPSystem& a, const PMPSystem& b);

/// Cylinder-cell measure over the window {-h..h}: the mass of each joint
/// cell of T^t a_i for i < n, t in the window. Coordinates are the eps
/// bits, i outer and t from -h to h; zero cells dropped.
FinMeasure pmp_qf_type_measure(const PmpAlgebra& alg, const std::vector<int>& tuple, int horizon);

}  // namespace afflog
