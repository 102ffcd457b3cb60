#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afflog/rational.hpp"

namespace afflog {

using Point = std::vector<Rational>;

/// Ordered list of distinct points of one dimension; its convex hull is
/// the ambient compact convex set.
struct PointCloud {
    int dim = 0;
    std::vector<Point> points;

    std::vector<std::string> check() const;
};

/// Finitely supported probability measure.
struct FinMeasure {
    std::vector<std::pair<Point, Rational>> support;

    std::vector<std::string> check() const;
};

// --- Exact LP ---

enum class LPStatus { Optimal, Infeasible, Unbounded };

/// max c.x subject to the rows; each row is A_i . x (<= | ==) b_i.
/// Variables are nonnegative unless listed free.
struct LinearProgram {
    int num_vars = 0;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<bool> is_equality;  // per row; false means <=
    std::vector<Rational> c;
    std::vector<bool> is_free;      // per var; false means x >= 0

    static LinearProgram make(int num_vars);
    void add_le(std::vector<Rational> row, Rational rhs);
    void add_eq(std::vector<Rational> row, Rational rhs);
};

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational optimum;
    std::vector<Rational> primal;  // at Optimal (also the feasible point when Unbounded)
    std::vector<Rational> dual;    // per row; at Optimal a dual solution, at Infeasible a Farkas certificate
    std::vector<Rational> ray;     // improving ray when Unbounded
};

/// Dictionary simplex with Bland's rule, exact rational pivots; always
/// terminates and returns exactly verifiable certificates.
LPResult lp_solve(const LinearProgram& lp);

/// Exact certificate audit; returns the list of violated conditions
/// (primal feasibility, dual feasibility, zero gap / Farkas signs).
std::vector<std::string> lp_verify(const LinearProgram& lp, const LPResult& r);

// --- Hull geometry ---

struct HullResult {
    bool inside = false;
    std::vector<Rational> coefficients;  // convex coefficients over the cloud, when inside
    Point normal;                        // h(x) = normal.x + offset separates otherwise:
    Rational offset;                     // h(p) > 0 >= h(c) for every cloud point c
};

HullResult hull_membership(const Point& p, const PointCloud& cloud);

/// Extreme points of conv(cloud), in cloud order.
PointCloud vertices(const PointCloud& cloud);

Point barycenter(const FinMeasure& mu);

/// Value at p of the concave envelope of the per-point values, relative to
/// conv(cloud). Throws DomainError when p lies outside the hull.
Rational concave_envelope(const PointCloud& cloud, const std::vector<Rational>& values,
                          const Point& p);

struct ChoquetResult {
    bool leq = false;
    // dilation[i][j]: mass moved from support point i of mu to support
    // point j of nu; rows sum to mu weights, columns to nu weights, row
    // barycenters reproduce the mu points.
    std::vector<std::vector<Rational>> dilation;
};

/// mu precedes nu in the Choquet order, decided by the dilation
/// (Strassen-type) feasibility LP.
ChoquetResult choquet_leq(const FinMeasure& mu, const FinMeasure& nu);

/// True iff every support point of mu is a vertex of the cloud.
bool is_boundary(const FinMeasure& mu, const PointCloud& cloud);

/// Vertex-supported measure with barycenter p; deterministic
/// (lexicographically least weight vector over the vertices in cloud
/// order). Throws DomainError when p lies outside the hull.
FinMeasure maximal_rep(const Point& p, const PointCloud& cloud);

struct SimplexResult {
    bool is_simplex = false;
    int vertex_count = 0;
    // Witness when not a simplex: one point with two distinct
    // vertex-supported representations.
    std::optional<Point> witness_point;
    std::optional<FinMeasure> rep_a, rep_b;
};

/// conv(cloud) is a simplex iff its vertices are affinely independent.
SimplexResult is_simplex(const PointCloud& cloud);

struct AffineMaxResult {
    bool equal = false;
    Rational max_over_cloud;
    Rational max_over_vertices;
    std::vector<int> argmax;  // cloud indices attaining the maximum
};

/// Checks that the affine functional x -> coeffs.x + offset attains its
/// maximum over the cloud at a vertex.
AffineMaxResult affine_max_at_vertices(const PointCloud& cloud, const Point& coeffs,
                                       const Rational& offset);

}  // namespace afflog
