#pragma once

#include "afflog/core.hpp"
#include "afflog/eval.hpp"
#include "afflog/formula.hpp"

namespace afflog {

inline constexpr std::size_t kDefaultCarrierCap = 20000;

/// An atomic measurable field: one structure per atom of a finite
/// probability space, all sharing a signature.
struct FiniteField {
    FinProbSpace space;
    std::vector<Structure> factors;

    std::vector<std::string> check() const;
};

/// A choice function picking one carrier element per atom (all sections
/// over a finite atomic space are measurable).
using Section = std::vector<int>;

/// The convex combination (direct integral over the atomic space): carrier
/// is the set of all sections in lexicographic order (atom 0 most
/// significant), functions coordinate-wise, predicates and the metric
/// averaged by the atom weights. Element labels join the factor labels
/// with '|'.
Structure convex_combine(const FiniteField& field, std::size_t cap = kDefaultCarrierCap);

/// L^1(Omega, M): the convex combination of the constant field.
Structure direct_multiple(const FinProbSpace& space, const Structure& m,
                          std::size_t cap = kDefaultCarrierCap);

/// Index of a section in the combined carrier.
std::size_t section_index(const FiniteField& field, const Section& s);

/// Constant-section index of a in direct_multiple(space, m) (the diagonal
/// embedding).
std::size_t diagonal_index(const FinProbSpace& space, const Structure& m, int a);

struct LosReport {
    Rational lhs;  // value in the combined structure
    Rational rhs;  // weighted sum of factor values
    bool equal = false;
    FormulaClass formula_class = FormulaClass::Continuous;
};

/// Compares the direct-integral value of f at the given sections with the
/// integral of the factor values. Non-affine formulas are accepted; the
/// report then shows the inequality direction instead of a guaranteed
/// equality.
LosReport los_check(const FiniteField& field, const FormulaPtr& f,
                    const std::vector<std::pair<std::string, Section>>& sections,
                    std::size_t cap = kDefaultCarrierCap);

/// One instance of the convex-realization axiom scheme:
///   sup_{x_0..x_{m-1}, y} inf_z  max_i | phi_i(z, y) - sum_j w_j phi_i(x_j, y) |
/// where each phi_i has free variables {x} ∪ ys.
struct CRInstance {
    std::vector<FormulaPtr> formulas;
    std::string x;                  // the distinguished variable
    std::vector<std::string> ys;    // parameter variables (may be empty)
    std::vector<Rational> weights;  // nonnegative, summing to 1
};

/// Exact value of the sup-inf expression on S; 0 means the instance holds.
Rational cr_defect(const Structure& s, const CRInstance& instance);

struct QConvexReport {
    std::vector<Rational> factor_values;
    Rational combined_value;
    bool premise = false;     // condition holds (value <= 0) in every factor
    bool conclusion = false;  // condition holds in the combination
    bool preserved = false;   // premise implies conclusion
};

/// Checks preservation of a q-convex condition (sentence of shape
/// sup/inf ... over a max of affine formulas, asserted <= 0) under the
/// direct integral. Throws DomainError when the sentence has the wrong
/// shape.
QConvexReport qconvex_preservation_check(const FiniteField& field, const FormulaPtr& condition,
                                         std::size_t cap = kDefaultCarrierCap);

}  // namespace afflog
