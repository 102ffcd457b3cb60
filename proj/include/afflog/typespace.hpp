#pragma once

#include "afflog/convex.hpp"
#include "afflog/modelalg.hpp"

namespace afflog {

/// Ordered list of affine formulas over one shared free-variable tuple;
/// restricting a type to the basis yields a Point of dimension size().
struct FormulaBasis {
    std::vector<FormulaPtr> formulas;
    std::vector<std::string> vars;  // the shared tuple, in order

    std::vector<std::string> check() const;
    std::size_t size() const { return formulas.size(); }
};

/// Finite-basis shadow of a realized type space: one point per distinct
/// basis-value vector, with the realizing tuples recorded.
struct TypeCloud {
    FormulaBasis basis;
    PointCloud cloud;
    // provenance[i]: the carrier tuples realizing point i, in tuple order.
    std::vector<std::vector<std::vector<int>>> provenance;
};

/// Basis values of every |carrier|^n tuple, deduplicated in first-seen
/// order. Throws DomainError when the tuple count exceeds the cap.
TypeCloud realized_types(const Structure& m, const FormulaBasis& basis,
                         std::size_t cap = kDefaultCarrierCap);

/// Hull vertices of the cloud, provenance preserved.
TypeCloud extreme_realized_types(const TypeCloud& tc);

SimplexResult simplex_diagnostic(const TypeCloud& tc);

/// Exact check of the identity: the basis-restricted type of the combined
/// tuple in the direct integral equals the weighted sum of the factor
/// types. tuples[w] lists, per basis variable, the element of factor w.
bool convexity_identity_check(const FiniteField& field,
                              const std::vector<std::vector<int>>& tuples,
                              const FormulaBasis& basis,
                              std::size_t cap = kDefaultCarrierCap);

struct TypeDistanceBound {
    Rational upper;
    Rational lower;
};

/// Brackets the type distance between the basis-restricted types of a and
/// b: the upper bound is the least tuple distance between co-realizations
/// found in M or in a uniform self-combination with at most `budget`
/// factors; the lower bound is the largest basis-value gap divided by the
/// formula's Lipschitz constant.
TypeDistanceBound type_distance_upper(const Structure& m, const std::vector<int>& a,
                                      const std::vector<int>& b, const FormulaBasis& basis,
                                      int budget = 3, std::size_t cap = kDefaultCarrierCap);

/// Adds one fresh predicate per formula (named P_0, P_1, ... unless taken)
/// whose table is the formula's value table; the value interval and
/// Lipschitz constant are derived structurally.
std::pair<Signature, Structure> morleyize(const Structure& m,
                                          const std::vector<FormulaPtr>& fs);

struct AffineApprox {
    Rational offset;                    // coefficient of the constant 1
    std::vector<Rational> coefficients; // per basis formula
    Rational error;                     // exact Chebyshev optimum
};

/// Best uniform approximation of the target by affine combinations of the
/// basis (plus a constant), over all tuples of all listed models; exact LP.
AffineApprox affine_approx_search(const FormulaPtr& target,
                                  const std::vector<Structure>& models,
                                  const FormulaBasis& basis,
                                  std::size_t cap = kDefaultCarrierCap);

struct TVFailure {
    std::size_t formula;      // index into the supplied list
    std::vector<int> params;  // parameter tuple (elements of A, in sorted
                              // parameter-variable order)
    Rational sup_model;
    Rational sup_subset;
};

struct TVReport {
    std::vector<TVFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// For each formula phi(x, ys) and each parameter tuple drawn from A,
/// compares sup_x over the full carrier with the max over A. A must be
/// nonempty and closed under the function symbols.
TVReport tarski_vaught_check(const Structure& m, const std::vector<int>& a_subset,
                             const std::vector<FormulaPtr>& formulas, const std::string& x);

}  // namespace afflog
