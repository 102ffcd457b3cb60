#include "afflog/convex.hpp"

#include <algorithm>
#include <map>

namespace afflog {

std::vector<std::string> PointCloud::check() const {
    std::vector<std::string> report;
    if (points.empty()) report.push_back("point cloud is empty");
    if (dim < 0) report.push_back("negative dimension");
    for (std::size_t i = 0; i < points.size(); ++i)
        if (static_cast<int>(points[i].size()) != dim)
            report.push_back("point " + std::to_string(i) + " has the wrong dimension");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                report.push_back("points " + std::to_string(i) + " and " + std::to_string(j) +
                                 " coincide");
    return report;
}

std::vector<std::string> FinMeasure::check() const {
    std::vector<std::string> report;
    if (support.empty()) report.push_back("measure has empty support");
    Rational total = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i].second <= 0)
            report.push_back("weight " + std::to_string(i) + " is not positive");
        if (support[i].first.size() != support[0].first.size())
            report.push_back("support point " + std::to_string(i) + " has the wrong dimension");
        total += support[i].second;
    }
    if (!support.empty() && total != 1) report.push_back("weights do not sum to 1");
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i + 1; j < support.size(); ++j)
            if (support[i].first == support[j].first)
                report.push_back("support points " + std::to_string(i) + " and " +
                                 std::to_string(j) + " coincide");
    return report;
}

LinearProgram LinearProgram::make(int num_vars) {
    LinearProgram lp;
    lp.num_vars = num_vars;
    lp.c.assign(num_vars, Rational(0));
    lp.is_free.assign(num_vars, false);
    return lp;
}

void LinearProgram::add_le(std::vector<Rational> row, Rational rhs) {
    A.push_back(std::move(row));
    b.push_back(std::move(rhs));
    is_equality.push_back(false);
}

void LinearProgram::add_eq(std::vector<Rational> row, Rational rhs) {
    A.push_back(std::move(row));
    b.push_back(std::move(rhs));
    is_equality.push_back(true);
}

namespace {

// Standard form: max c.x, Ax <= b, x >= 0. Solved by the two-phase
// dictionary simplex with Bland's rule (smallest eligible index enters;
// ratio ties broken by smallest basic index), which cannot cycle.
struct StandardLP {
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<Rational> c;
};

struct StandardResult {
    LPStatus status;
    Rational optimum;
    std::vector<Rational> primal;
    std::vector<Rational> dual;  // Farkas certificate when infeasible
    std::vector<Rational> ray;
};

// Tableau rows: m constraints, then the objective row (entries are
// z_j - c_j, right-hand side is the current objective value), then during
// phase 1 an auxiliary objective row for max -x0.
class Tableau {
public:
    Tableau(const StandardLP& lp, bool with_artificial)
        : m_(lp.A.size()),
          n_(lp.c.size()),
          art_(with_artificial ? static_cast<int>(n_ + m_) : -1),
          width_(n_ + m_ + (with_artificial ? 1 : 0) + 1) {
        rows_.assign(m_ + (with_artificial ? 2 : 1), std::vector<Rational>(width_, Rational(0)));
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = lp.A[i][j];
            rows_[i][n_ + i] = 1;
            if (with_artificial) rows_[i][art_] = -1;
            rows_[i][width_ - 1] = lp.b[i];
            basis_[i] = static_cast<int>(n_ + i);
        }
        for (std::size_t j = 0; j < n_; ++j) rows_[m_][j] = -lp.c[j];
        if (with_artificial) rows_[m_ + 1][art_] = 1;  // aux objective: max -x0
    }

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    int artificial() const { return art_; }
    int basis(std::size_t i) const { return basis_[i]; }
    const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const Rational& rhs(std::size_t i) const { return rows_[i][width_ - 1]; }
    const Rational& objective(std::size_t obj_row) const { return rows_[obj_row][width_ - 1]; }

    void pivot(std::size_t row, std::size_t col) {
        Rational p = rows_[row][col];
        for (auto& v : rows_[row]) v /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || rows_[i][col] == 0) continue;
            Rational f = rows_[i][col];
            for (std::size_t j = 0; j < width_; ++j) rows_[i][j] -= f * rows_[row][j];
        }
        basis_[row] = static_cast<int>(col);
    }

    // Bland iteration against the given objective row until optimal or
    // unbounded; columns >= limit are never entered.
    LPStatus run(std::size_t obj_row, std::size_t col_limit, std::size_t* unbounded_col) {
        while (true) {
            std::size_t enter = col_limit;
            for (std::size_t j = 0; j < col_limit; ++j)
                if (rows_[obj_row][j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == col_limit) return LPStatus::Optimal;
            int leave = -1;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rational ratio = rhs(i) / rows_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave]))
                    leave = static_cast<int>(i), best = ratio;
            }
            if (leave < 0) {
                if (unbounded_col) *unbounded_col = enter;
                return LPStatus::Unbounded;
            }
            pivot(static_cast<std::size_t>(leave), enter);
        }
    }

private:
    std::size_t m_, n_;
    int art_;
    std::size_t width_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<int> basis_;
};

StandardResult solve_standard(const StandardLP& lp) {
    const std::size_t m = lp.A.size();
    const std::size_t n = lp.c.size();
    bool needs_phase1 = std::any_of(lp.b.begin(), lp.b.end(),
                                    [](const Rational& v) { return v < 0; });

    Tableau t(lp, needs_phase1);
    StandardResult out;

    if (needs_phase1) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (t.rhs(i) < t.rhs(worst)) worst = i;
        t.pivot(worst, static_cast<std::size_t>(t.artificial()));
        t.run(m + 1, n + m + 1, nullptr);
        if (t.objective(m + 1) < 0) {
            out.status = LPStatus::Infeasible;
            out.dual.resize(m);
            for (std::size_t i = 0; i < m; ++i) out.dual[i] = t.at(m + 1, n + i);
            return out;
        }
        // Degenerate case: the artificial variable may still be basic at 0.
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis(i) == t.artificial()) {
                for (std::size_t j = 0; j < n + m; ++j)
                    if (t.at(i, j) != 0) {
                        t.pivot(i, j);
                        break;
                    }
                break;
            }
    }

    // Phase 2; if the artificial column is present it stays nonbasic and
    // is simply never entered.
    std::size_t ub_col = 0;
    LPStatus st = t.run(m, n + m, &ub_col);

    out.primal.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis(i) >= 0 && t.basis(i) < static_cast<int>(n))
            out.primal[t.basis(i)] = t.rhs(i);

    if (st == LPStatus::Unbounded) {
        out.status = LPStatus::Unbounded;
        out.ray.assign(n, Rational(0));
        if (ub_col < n) out.ray[ub_col] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis(i) < static_cast<int>(n)) out.ray[t.basis(i)] = -t.at(i, ub_col);
        return out;
    }

    out.status = LPStatus::Optimal;
    out.optimum = t.objective(m);
    out.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.dual[i] = t.at(m, n + i);
    return out;
}

void check_shape(const LinearProgram& lp) {
    if (lp.A.size() != lp.b.size() || lp.A.size() != lp.is_equality.size() ||
        static_cast<int>(lp.c.size()) != lp.num_vars ||
        static_cast<int>(lp.is_free.size()) != lp.num_vars)
        throw DomainError("malformed linear program");
    for (const auto& row : lp.A)
        if (static_cast<int>(row.size()) != lp.num_vars)
            throw DomainError("malformed linear program");
}

}  // namespace

LPResult lp_solve(const LinearProgram& lp) {
    check_shape(lp);

    // Convert to standard form: free variables split into a difference of
    // two nonnegative ones, equalities into opposite inequalities.
    std::vector<std::size_t> pos_col(lp.num_vars);
    std::size_t cols = 0;
    for (int j = 0; j < lp.num_vars; ++j) {
        pos_col[j] = cols;
        cols += lp.is_free[j] ? 2 : 1;
    }

    StandardLP std_lp;
    std_lp.c.assign(cols, Rational(0));
    for (int j = 0; j < lp.num_vars; ++j) {
        std_lp.c[pos_col[j]] = lp.c[j];
        if (lp.is_free[j]) std_lp.c[pos_col[j] + 1] = -lp.c[j];
    }
    std::vector<std::pair<std::size_t, int>> row_map;  // (standard row, sign) per original row
    for (std::size_t i = 0; i < lp.A.size(); ++i) {
        std::vector<Rational> row(cols, Rational(0));
        for (int j = 0; j < lp.num_vars; ++j) {
            row[pos_col[j]] = lp.A[i][j];
            if (lp.is_free[j]) row[pos_col[j] + 1] = -lp.A[i][j];
        }
        row_map.emplace_back(std_lp.A.size(), 1);
        std_lp.A.push_back(row);
        std_lp.b.push_back(lp.b[i]);
        if (lp.is_equality[i]) {
            for (auto& v : row) v = -v;
            std_lp.A.push_back(std::move(row));
            std_lp.b.push_back(-lp.b[i]);
        }
    }

    StandardResult sr = solve_standard(std_lp);

    LPResult r;
    r.status = sr.status;
    auto map_point = [&](const std::vector<Rational>& x) {
        std::vector<Rational> out(lp.num_vars);
        for (int j = 0; j < lp.num_vars; ++j)
            out[j] = lp.is_free[j] ? x[pos_col[j]] - x[pos_col[j] + 1] : x[pos_col[j]];
        return out;
    };
    auto map_dual = [&](const std::vector<Rational>& y) {
        std::vector<Rational> out(lp.A.size());
        for (std::size_t i = 0; i < lp.A.size(); ++i) {
            out[i] = y[row_map[i].first];
            if (lp.is_equality[i]) out[i] -= y[row_map[i].first + 1];
        }
        return out;
    };

    if (sr.status == LPStatus::Optimal) {
        r.optimum = sr.optimum;
        r.primal = map_point(sr.primal);
        r.dual = map_dual(sr.dual);
    } else if (sr.status == LPStatus::Infeasible) {
        r.dual = map_dual(sr.dual);
    } else {
        r.primal = map_point(sr.primal);
        r.ray = map_point(sr.ray);
    }
    return r;
}

std::vector<std::string> lp_verify(const LinearProgram& lp, const LPResult& r) {
    check_shape(lp);
    std::vector<std::string> bad;
    const std::size_t m = lp.A.size();

    auto dot_row = [&](std::size_t i, const std::vector<Rational>& x) {
        Rational v = 0;
        for (int j = 0; j < lp.num_vars; ++j) v += lp.A[i][j] * x[j];
        return v;
    };
    auto primal_feasible = [&](const std::vector<Rational>& x, const char* tag) {
        for (std::size_t i = 0; i < m; ++i) {
            Rational v = dot_row(i, x);
            if (lp.is_equality[i] ? v != lp.b[i] : v > lp.b[i])
                bad.push_back(std::string(tag) + " violates row " + std::to_string(i));
        }
        for (int j = 0; j < lp.num_vars; ++j)
            if (!lp.is_free[j] && x[j] < 0)
                bad.push_back(std::string(tag) + " has negative component " + std::to_string(j));
    };
    auto dual_col = [&](std::size_t j) {
        Rational v = 0;
        for (std::size_t i = 0; i < m; ++i) v += r.dual[i] * lp.A[i][j];
        return v;
    };

    if (r.status == LPStatus::Optimal) {
        primal_feasible(r.primal, "primal");
        if (r.dual.size() != m) {
            bad.push_back("dual has the wrong length");
            return bad;
        }
        Rational dual_value = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!lp.is_equality[i] && r.dual[i] < 0)
                bad.push_back("dual component " + std::to_string(i) + " is negative");
            dual_value += r.dual[i] * lp.b[i];
        }
        for (int j = 0; j < lp.num_vars; ++j) {
            Rational v = dual_col(j);
            if (lp.is_free[j] ? v != lp.c[j] : v < lp.c[j])
                bad.push_back("dual infeasible at column " + std::to_string(j));
        }
        Rational primal_value = 0;
        for (int j = 0; j < lp.num_vars; ++j) primal_value += lp.c[j] * r.primal[j];
        if (primal_value != r.optimum) bad.push_back("stated optimum differs from c.x");
        if (dual_value != r.optimum) bad.push_back("nonzero duality gap");
    } else if (r.status == LPStatus::Infeasible) {
        if (r.dual.size() != m) {
            bad.push_back("Farkas certificate has the wrong length");
            return bad;
        }
        Rational yb = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!lp.is_equality[i] && r.dual[i] < 0)
                bad.push_back("Farkas component " + std::to_string(i) + " is negative");
            yb += r.dual[i] * lp.b[i];
        }
        for (int j = 0; j < lp.num_vars; ++j) {
            Rational v = dual_col(j);
            if (lp.is_free[j] ? v != 0 : v < 0)
                bad.push_back("Farkas certificate fails at column " + std::to_string(j));
        }
        if (yb >= 0) bad.push_back("Farkas certificate has y.b >= 0");
    } else {
        primal_feasible(r.primal, "ray base point");
        Rational gain = 0;
        for (int j = 0; j < lp.num_vars; ++j) gain += lp.c[j] * r.ray[j];
        if (gain <= 0) bad.push_back("ray does not improve the objective");
        for (std::size_t i = 0; i < m; ++i) {
            Rational v = dot_row(i, r.ray);
            if (lp.is_equality[i] ? v != 0 : v > 0)
                bad.push_back("ray leaves the feasible cone at row " + std::to_string(i));
        }
        for (int j = 0; j < lp.num_vars; ++j)
            if (!lp.is_free[j] && r.ray[j] < 0)
                bad.push_back("ray has negative component " + std::to_string(j));
    }
    return bad;
}

// --- Hull geometry ---

namespace {

void require_valid(const PointCloud& cloud) {
    auto report = cloud.check();
    if (!report.empty()) throw DomainError("invalid point cloud: " + report.front());
}

void require_valid(const FinMeasure& mu) {
    auto report = mu.check();
    if (!report.empty()) throw DomainError("invalid measure: " + report.front());
}

// Feasibility system for convex coefficients over `cloud` reproducing p:
// one equality per coordinate plus the total-mass row.
LinearProgram hull_lp(const Point& p, const PointCloud& cloud) {
    const int k = static_cast<int>(cloud.points.size());
    LinearProgram lp = LinearProgram::make(k);
    for (int d = 0; d < cloud.dim; ++d) {
        std::vector<Rational> row(k);
        for (int i = 0; i < k; ++i) row[i] = cloud.points[i][d];
        lp.add_eq(std::move(row), p[d]);
    }
    lp.add_eq(std::vector<Rational>(k, Rational(1)), Rational(1));
    return lp;
}

}  // namespace

HullResult hull_membership(const Point& p, const PointCloud& cloud) {
    require_valid(cloud);
    if (static_cast<int>(p.size()) != cloud.dim)
        throw DomainError("point has the wrong dimension");

    // A listed point represents itself.
    for (std::size_t i = 0; i < cloud.points.size(); ++i)
        if (cloud.points[i] == p) {
            HullResult h;
            h.inside = true;
            h.coefficients.assign(cloud.points.size(), Rational(0));
            h.coefficients[i] = 1;
            return h;
        }

    LPResult r = lp_solve(hull_lp(p, cloud));
    HullResult h;
    if (r.status == LPStatus::Optimal) {
        h.inside = true;
        h.coefficients = r.primal;
        return h;
    }
    // The Farkas certificate y satisfies y.(c, 1) >= 0 for every cloud
    // point c and y.(p, 1) < 0; negating it gives the separation.
    h.normal.resize(cloud.dim);
    for (int d = 0; d < cloud.dim; ++d) h.normal[d] = -r.dual[d];
    h.offset = -r.dual[cloud.dim];
    return h;
}

PointCloud vertices(const PointCloud& cloud) {
    require_valid(cloud);
    PointCloud out;
    out.dim = cloud.dim;
    if (cloud.points.size() == 1) {
        out.points = cloud.points;
        return out;
    }
    for (std::size_t q = 0; q < cloud.points.size(); ++q) {
        PointCloud rest;
        rest.dim = cloud.dim;
        for (std::size_t i = 0; i < cloud.points.size(); ++i)
            if (i != q) rest.points.push_back(cloud.points[i]);
        if (!hull_membership(cloud.points[q], rest).inside)
            out.points.push_back(cloud.points[q]);
    }
    return out;
}

Point barycenter(const FinMeasure& mu) {
    require_valid(mu);
    Point out(mu.support[0].first.size(), Rational(0));
    for (const auto& [pt, w] : mu.support)
        for (std::size_t d = 0; d < out.size(); ++d) out[d] += w * pt[d];
    return out;
}

Rational concave_envelope(const PointCloud& cloud, const std::vector<Rational>& values,
                          const Point& p) {
    require_valid(cloud);
    if (values.size() != cloud.points.size())
        throw DomainError("one value per cloud point is required");
    if (static_cast<int>(p.size()) != cloud.dim)
        throw DomainError("point has the wrong dimension");

    LinearProgram lp = hull_lp(p, cloud);
    lp.c = values;
    LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal)
        throw DomainError("point lies outside the convex hull");
    return r.optimum;
}

ChoquetResult choquet_leq(const FinMeasure& mu, const FinMeasure& nu) {
    require_valid(mu);
    require_valid(nu);
    const int km = static_cast<int>(mu.support.size());
    const int kn = static_cast<int>(nu.support.size());
    const std::size_t dim = mu.support[0].first.size();
    if (nu.support[0].first.size() != dim)
        throw DomainError("measures live in different dimensions");

    // Variables T[i][j] >= 0, flattened row-major: T moves the mass of mu
    // onto nu so that each mu point is the barycenter of its row.
    LinearProgram lp = LinearProgram::make(km * kn);
    auto var = [&](int i, int j) { return i * kn + j; };
    for (int i = 0; i < km; ++i) {
        std::vector<Rational> row(km * kn, Rational(0));
        for (int j = 0; j < kn; ++j) row[var(i, j)] = 1;
        lp.add_eq(std::move(row), mu.support[i].second);
        for (std::size_t d = 0; d < dim; ++d) {
            std::vector<Rational> bary(km * kn, Rational(0));
            for (int j = 0; j < kn; ++j) bary[var(i, j)] = nu.support[j].first[d];
            lp.add_eq(std::move(bary), mu.support[i].second * mu.support[i].first[d]);
        }
    }
    for (int j = 0; j < kn; ++j) {
        std::vector<Rational> col(km * kn, Rational(0));
        for (int i = 0; i < km; ++i) col[var(i, j)] = 1;
        lp.add_eq(std::move(col), nu.support[j].second);
    }

    ChoquetResult out;
    LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal) return out;
    out.leq = true;
    out.dilation.assign(km, std::vector<Rational>(kn));
    for (int i = 0; i < km; ++i)
        for (int j = 0; j < kn; ++j) out.dilation[i][j] = r.primal[var(i, j)];
    return out;
}

bool is_boundary(const FinMeasure& mu, const PointCloud& cloud) {
    require_valid(mu);
    PointCloud v = vertices(cloud);
    for (const auto& [pt, w] : mu.support)
        if (std::find(v.points.begin(), v.points.end(), pt) == v.points.end()) return false;
    return true;
}

FinMeasure maximal_rep(const Point& p, const PointCloud& cloud) {
    require_valid(cloud);
    PointCloud v = vertices(cloud);
    const int k = static_cast<int>(v.points.size());

    // Lexicographically least weight vector over the vertices: fix the
    // coordinates one at a time at their minimum feasible value.
    std::vector<Rational> fixed;
    for (int t = 0; t < k; ++t) {
        LinearProgram lp = hull_lp(p, v);
        for (int j = 0; j < static_cast<int>(fixed.size()); ++j) {
            std::vector<Rational> row(k, Rational(0));
            row[j] = 1;
            lp.add_eq(std::move(row), fixed[j]);
        }
        lp.c[t] = -1;
        LPResult r = lp_solve(lp);
        if (r.status != LPStatus::Optimal)
            throw DomainError("point lies outside the convex hull");
        fixed.push_back(-r.optimum);
    }

    FinMeasure out;
    for (int j = 0; j < k; ++j)
        if (fixed[j] != 0) out.support.emplace_back(v.points[j], fixed[j]);
    return out;
}

namespace {

// One nonzero vector in the kernel of the (dim+1) x k matrix whose columns
// are the points extended by 1, or nothing when the columns are
// independent. Exact Gaussian elimination.
std::optional<std::vector<Rational>> affine_dependence(const PointCloud& cloud) {
    const int k = static_cast<int>(cloud.points.size());
    const int rows = cloud.dim + 1;
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(k));
    for (int d = 0; d < cloud.dim; ++d)
        for (int j = 0; j < k; ++j) m[d][j] = cloud.points[j][d];
    for (int j = 0; j < k; ++j) m[cloud.dim][j] = 1;

    std::vector<int> pivot_of_col(k, -1);
    int rank = 0;
    for (int col = 0; col < k && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[rank], m[pr]);
        Rational p = m[rank][col];
        for (auto& x : m[rank]) x /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (int j = 0; j < k; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }

    int free_col = -1;
    for (int col = 0; col < k; ++col)
        if (pivot_of_col[col] < 0) {
            free_col = col;
            break;
        }
    if (free_col < 0) return std::nullopt;

    std::vector<Rational> alpha(k, Rational(0));
    alpha[free_col] = 1;
    for (int col = 0; col < free_col; ++col)
        if (pivot_of_col[col] >= 0) alpha[col] = -m[pivot_of_col[col]][free_col];
    return alpha;
}

}  // namespace

SimplexResult is_simplex(const PointCloud& cloud) {
    PointCloud v = vertices(cloud);
    SimplexResult out;
    out.vertex_count = static_cast<int>(v.points.size());

    auto alpha = affine_dependence(v);
    if (!alpha) {
        out.is_simplex = true;
        return out;
    }

    // Split the dependence into its positive and negative parts: both
    // sides normalize to probability measures with the same barycenter.
    Rational mass = 0;
    for (const auto& a : *alpha)
        if (a > 0) mass += a;
    FinMeasure rep_a, rep_b;
    for (std::size_t j = 0; j < alpha->size(); ++j) {
        if ((*alpha)[j] > 0) rep_a.support.emplace_back(v.points[j], (*alpha)[j] / mass);
        if ((*alpha)[j] < 0) rep_b.support.emplace_back(v.points[j], -(*alpha)[j] / mass);
    }
    out.witness_point = barycenter(rep_a);
    out.rep_a = std::move(rep_a);
    out.rep_b = std::move(rep_b);
    return out;
}

AffineMaxResult affine_max_at_vertices(const PointCloud& cloud, const Point& coeffs,
                                       const Rational& offset) {
    require_valid(cloud);
    if (static_cast<int>(coeffs.size()) != cloud.dim)
        throw DomainError("functional has the wrong dimension");
    auto value = [&](const Point& p) {
        Rational v = offset;
        for (int d = 0; d < cloud.dim; ++d) v += coeffs[d] * p[d];
        return v;
    };

    AffineMaxResult out;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        Rational v = value(cloud.points[i]);
        if (i == 0 || v > out.max_over_cloud) {
            out.max_over_cloud = v;
            out.argmax.clear();
        }
        if (v == out.max_over_cloud) out.argmax.push_back(static_cast<int>(i));
    }
    PointCloud vs = vertices(cloud);
    for (std::size_t i = 0; i < vs.points.size(); ++i) {
        Rational v = value(vs.points[i]);
        if (i == 0 || v > out.max_over_vertices) out.max_over_vertices = v;
    }
    out.equal = out.max_over_cloud == out.max_over_vertices;
    return out;
}

}  // namespace afflog
