// Shared fixtures and randomized generators for the test binaries. All
// randomness is seeded explicitly so every run sees the same cases.
#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "afflog/convex.hpp"
#include "afflog/eval.hpp"
#include "afflog/modelalg.hpp"
#include "afflog/theories.hpp"
#include "afflog/typespace.hpp"

namespace testutil {

using namespace afflog;
using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Two-point space {u, v} at distance 1 with unary predicates P = (0,1)
/// and Q = (1,0).
inline Structure two_point() {
    Structure s;
    s.sig.metric_bound = 1;
    s.sig.predicates.push_back({"P", 1, Rational(0), Rational(1), Rational(1)});
    s.sig.predicates.push_back({"Q", 1, Rational(0), Rational(1), Rational(1)});
    s.carrier = {"u", "v"};
    s.metric = {Rational(0), Rational(1), Rational(1), Rational(0)};
    s.predicates["P"] = {Rational(0), Rational(1)};
    s.predicates["Q"] = {Rational(1), Rational(0)};
    return s;
}

/// Signature of the randomized structures: unary P, Q, binary R (values in
/// [0, 1/2], Lipschitz 1), unary function g (Lipschitz 2).
inline Signature random_sig() {
    Signature sig;
    sig.metric_bound = 1;
    sig.predicates.push_back({"P", 1, Rational(0), Rational(1, 2), Rational(1)});
    sig.predicates.push_back({"Q", 1, Rational(0), Rational(1, 2), Rational(1)});
    sig.predicates.push_back({"R", 2, Rational(0), Rational(1, 2), Rational(1)});
    sig.functions.push_back({"g", 1, Rational(2)});
    return sig;
}

/// Valid by construction: distances in {1/2, 3/4, 1} (any such matrix is a
/// metric), predicate values in {0, 1/8, ..., 1/2} (1-Lipschitz because
/// every distance is >= 1/2), arbitrary unary function (2-Lipschitz).
inline Structure random_structure(Rng& rng, int n) {
    Structure s;
    s.sig = random_sig();
    for (int i = 0; i < n; ++i) s.carrier.push_back("e" + std::to_string(i));
    s.metric.assign(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational d = Rational(rand_int(rng, 2, 4), 4);
            s.metric[i * n + j] = d;
            s.metric[j * n + i] = d;
        }
    auto rand_val = [&] { return Rational(rand_int(rng, 0, 4), 8); };
    auto& p = s.predicates["P"];
    auto& q = s.predicates["Q"];
    for (int i = 0; i < n; ++i) {
        p.push_back(rand_val());
        q.push_back(rand_val());
    }
    auto& r = s.predicates["R"];
    for (int i = 0; i < n * n; ++i) r.push_back(rand_val());
    auto& g = s.functions["g"];
    for (int i = 0; i < n; ++i) g.push_back(rand_int(rng, 0, n - 1));
    return s;
}

inline FinProbSpace uniform_space(int k) {
    FinProbSpace sp;
    for (int i = 0; i < k; ++i) sp.atoms.push_back({"w" + std::to_string(i), Rational(1, k)});
    return sp;
}

inline std::vector<Rational> random_weights(Rng& rng, int k) {
    std::vector<int> raw(k);
    int total = 0;
    for (int& v : raw) total += (v = rand_int(rng, 1, 5));
    std::vector<Rational> out;
    for (int v : raw) out.push_back(Rational(v, total));
    return out;
}

inline FiniteField random_field(Rng& rng, int factors, int max_elems) {
    FiniteField field;
    auto weights = random_weights(rng, factors);
    for (int w = 0; w < factors; ++w) {
        field.space.atoms.push_back({"w" + std::to_string(w), weights[w]});
        field.factors.push_back(random_structure(rng, rand_int(rng, 2, max_elems)));
    }
    return field;
}

struct FormulaGen {
    Rng& rng;
    Signature sig;
    std::vector<std::string> scope;  // variables usable at this point
    int quantifiers_left = 2;
    int fresh = 0;
    bool lattice = false;  // allow Max/Min/Abs nodes

    Term term() {
        std::string v = scope[rand_int(rng, 0, static_cast<int>(scope.size()) - 1)];
        if (rand_int(rng, 0, 3) == 0) return t_func("g", {t_var(v)});
        return t_var(v);
    }

    FormulaPtr atom() {
        switch (rand_int(rng, 0, 3)) {
            case 0: return f_atom("P", {term()});
            case 1: return f_atom("Q", {term()});
            case 2: return f_atom("R", {term(), term()});
            default: return f_dist(term(), term());
        }
    }

    FormulaPtr gen(int depth) {
        if (depth <= 0) return rand_int(rng, 0, 4) == 0 ? f_one() : atom();
        int top = lattice ? 7 : 4;
        switch (rand_int(rng, 0, top)) {
            case 0: return atom();
            case 1: {
                Rational r(rand_int(rng, -2, 2), rand_int(rng, 1, 3));
                if (r == 0) r = 1;
                return f_scale(r, gen(depth - 1));
            }
            case 2: return f_sum(gen(depth - 1), gen(depth - 1));
            case 3:
            case 4: {
                if (quantifiers_left <= 0) return gen(depth - 1);
                --quantifiers_left;
                std::string v = "z" + std::to_string(fresh++);
                scope.push_back(v);
                FormulaPtr body = gen(depth - 1);
                scope.pop_back();
                return rand_int(rng, 0, 1) ? f_sup(v, body) : f_inf(v, body);
            }
            case 5: return f_max(gen(depth - 1), gen(depth - 1));
            case 6: return f_min(gen(depth - 1), gen(depth - 1));
            default: return f_abs(gen(depth - 1));
        }
    }
};

inline FormulaPtr random_affine_formula(Rng& rng, const std::vector<std::string>& vars,
                                        int depth = 3, int quantifiers = 2) {
    FormulaGen gen{rng, random_sig(), vars, quantifiers, 0, false};
    return gen.gen(depth);
}

inline FormulaPtr random_continuous_formula(Rng& rng, const std::vector<std::string>& vars,
                                            int depth = 3, int quantifiers = 2) {
    FormulaGen gen{rng, random_sig(), vars, quantifiers, 0, true};
    return gen.gen(depth);
}

// --- Brute-force LP oracle (dim <= 3): enumerate candidate vertices as
// intersections of constraint hyperplanes (including x_j >= 0), keep the
// feasible ones, and maximize c.x over them.

inline std::optional<std::vector<Rational>> solve_square(
    std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
    const int n = static_cast<int>(b.size());
    std::vector<Rational> x(n, Rational(0));
    for (int col = 0, row = 0; col < n && row < n; ++col, ++row) {
        int pivot = -1;
        for (int i = row; i < n; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return std::nullopt;  // singular
        std::swap(m[row], m[pivot]);
        std::swap(b[row], b[pivot]);
        for (int i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col] / m[row][col];
            for (int j = 0; j < n; ++j) m[i][j] -= f * m[row][j];
            b[i] -= f * b[row];
        }
    }
    for (int i = 0; i < n; ++i) {
        if (m[i][i] == 0) return std::nullopt;
        x[i] = b[i] / m[i][i];
    }
    return x;
}

struct VertexOracle {
    bool feasible = false;
    Rational best;  // max c.x over feasible candidate vertices
};

inline VertexOracle lp_vertex_oracle(const std::vector<std::vector<Rational>>& A,
                                     const std::vector<Rational>& b,
                                     const std::vector<Rational>& c) {
    const int n = static_cast<int>(c.size());
    std::vector<std::vector<Rational>> rows = A;
    std::vector<Rational> rhs = b;
    for (int j = 0; j < n; ++j) {  // -x_j <= 0
        std::vector<Rational> row(n, Rational(0));
        row[j] = -1;
        rows.push_back(row);
        rhs.push_back(Rational(0));
    }
    const int m = static_cast<int>(rows.size());
    VertexOracle out;
    std::vector<int> pick(n);
    auto consider = [&](const std::vector<Rational>& x) {
        for (int i = 0; i < m; ++i) {
            Rational v = 0;
            for (int j = 0; j < n; ++j) v += rows[i][j] * x[j];
            if (v > rhs[i]) return;
        }
        Rational value = 0;
        for (int j = 0; j < n; ++j) value += c[j] * x[j];
        if (!out.feasible || value > out.best) out.best = value;
        out.feasible = true;
    };
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            std::vector<std::vector<Rational>> sq;
            std::vector<Rational> sb;
            for (int i = 0; i < n; ++i) {
                sq.push_back(rows[pick[i]]);
                sb.push_back(rhs[pick[i]]);
            }
            if (auto x = solve_square(sq, sb)) consider(*x);
            return;
        }
        for (int i = start; i < m; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (n == 0) {
        consider({});
    } else {
        rec(0, 0);
    }
    return out;
}

/// Checks that T is a dilation moving mu onto nu.
inline bool valid_dilation(const FinMeasure& mu, const FinMeasure& nu,
                           const std::vector<std::vector<Rational>>& t) {
    const std::size_t km = mu.support.size(), kn = nu.support.size();
    if (t.size() != km) return false;
    const std::size_t dim = mu.support[0].first.size();
    for (std::size_t i = 0; i < km; ++i) {
        if (t[i].size() != kn) return false;
        Rational row = 0;
        Point bary(dim, Rational(0));
        for (std::size_t j = 0; j < kn; ++j) {
            if (t[i][j] < 0) return false;
            row += t[i][j];
            for (std::size_t d = 0; d < dim; ++d) bary[d] += t[i][j] * nu.support[j].first[d];
        }
        if (row != mu.support[i].second) return false;
        for (std::size_t d = 0; d < dim; ++d)
            if (bary[d] != mu.support[i].second * mu.support[i].first[d]) return false;
    }
    for (std::size_t j = 0; j < kn; ++j) {
        Rational col = 0;
        for (std::size_t i = 0; i < km; ++i) col += t[i][j];
        if (col != nu.support[j].second) return false;
    }
    return true;
}

}  // namespace testutil
