#include "afflog/typespace.hpp"

#include <algorithm>
#include <map>

namespace afflog {

std::vector<std::string> FormulaBasis::check() const {
    std::vector<std::string> report;
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) report.push_back("duplicate basis variable '" + vars[i] + "'");
    for (std::size_t i = 0; i < formulas.size(); ++i) {
        if (!is_affine(formulas[i]))
            report.push_back("basis formula " + std::to_string(i) + " is not affine");
        for (const auto& v : free_vars(formulas[i]))
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                report.push_back("basis formula " + std::to_string(i) +
                                 " uses an undeclared variable '" + v + "'");
        for (std::size_t j = i + 1; j < formulas.size(); ++j)
            if (equal(formulas[i], formulas[j]))
                report.push_back("basis formulas " + std::to_string(i) + " and " +
                                 std::to_string(j) + " coincide");
    }
    return report;
}

namespace {

void require_valid(const FormulaBasis& basis) {
    auto report = basis.check();
    if (!report.empty()) throw DomainError("invalid basis: " + report.front());
}

std::size_t tuple_count(std::size_t carrier, std::size_t arity, std::size_t cap) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        n *= carrier;
        if (n > cap)
            throw DomainError("tuple count exceeds the cap of " + std::to_string(cap));
    }
    return n;
}

Assignment make_assignment(const std::vector<std::string>& vars, const std::vector<int>& tuple) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = tuple[i];
    return a;
}

}  // namespace

TypeCloud realized_types(const Structure& m, const FormulaBasis& basis, std::size_t cap) {
    require_valid(basis);
    tuple_count(m.carrier.size(), basis.vars.size(), cap);

    std::vector<std::vector<Rational>> tables;
    for (const auto& f : basis.formulas) tables.push_back(eval_all(m, f, basis.vars));

    TypeCloud tc;
    tc.basis = basis;
    tc.cloud.dim = static_cast<int>(basis.size());
    std::map<Point, std::size_t> seen;
    std::size_t idx = 0;
    for_each_tuple(m.size(), static_cast<int>(basis.vars.size()),
                   [&](const std::vector<int>& tuple) {
                       Point p(basis.size());
                       for (std::size_t i = 0; i < basis.size(); ++i) p[i] = tables[i][idx];
                       auto it = seen.find(p);
                       if (it == seen.end()) {
                           seen.emplace(p, tc.cloud.points.size());
                           tc.cloud.points.push_back(std::move(p));
                           tc.provenance.push_back({tuple});
                       } else {
                           tc.provenance[it->second].push_back(tuple);
                       }
                       ++idx;
                   });
    return tc;
}

TypeCloud extreme_realized_types(const TypeCloud& tc) {
    PointCloud v = vertices(tc.cloud);
    TypeCloud out;
    out.basis = tc.basis;
    out.cloud = v;
    for (const auto& p : v.points) {
        auto it = std::find(tc.cloud.points.begin(), tc.cloud.points.end(), p);
        out.provenance.push_back(tc.provenance[it - tc.cloud.points.begin()]);
    }
    return out;
}

SimplexResult simplex_diagnostic(const TypeCloud& tc) { return is_simplex(tc.cloud); }

bool convexity_identity_check(const FiniteField& field,
                              const std::vector<std::vector<int>>& tuples,
                              const FormulaBasis& basis, std::size_t cap) {
    require_valid(basis);
    if (tuples.size() != field.factors.size())
        throw DomainError("one tuple per factor is required");
    for (std::size_t w = 0; w < tuples.size(); ++w)
        if (tuples[w].size() != basis.vars.size())
            throw DomainError("tuple " + std::to_string(w) + " does not match the basis variables");

    Structure k = convex_combine(field, cap);
    Assignment combined;
    for (std::size_t i = 0; i < basis.vars.size(); ++i) {
        Section s(field.factors.size());
        for (std::size_t w = 0; w < field.factors.size(); ++w) s[w] = tuples[w][i];
        combined[basis.vars[i]] = static_cast<int>(section_index(field, s));
    }

    for (const auto& f : basis.formulas) {
        Rational lhs = eval(k, f, combined);
        Rational rhs = 0;
        for (std::size_t w = 0; w < field.factors.size(); ++w)
            rhs += field.space.atoms[w].weight *
                   eval(field.factors[w], f, make_assignment(basis.vars, tuples[w]));
        if (lhs != rhs) return false;
    }
    return true;
}

TypeDistanceBound type_distance_upper(const Structure& m, const std::vector<int>& a,
                                      const std::vector<int>& b, const FormulaBasis& basis,
                                      int budget, std::size_t cap) {
    require_valid(basis);
    const std::size_t n = basis.vars.size();
    if (a.size() != n || b.size() != n)
        throw DomainError("tuples must match the basis variables");

    Point ta(basis.size()), tb(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ta[i] = eval(m, basis.formulas[i], make_assignment(basis.vars, a));
        tb[i] = eval(m, basis.formulas[i], make_assignment(basis.vars, b));
    }

    TypeDistanceBound out;
    out.lower = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Rational gap = rabs(ta[i] - tb[i]);
        if (gap == 0) continue;
        Rational lip = lipschitz_bound(m.sig, basis.formulas[i]);
        if (lip > 0) out.lower = std::max(out.lower, gap / lip);
    }

    // Candidate co-realizations in M itself and in its uniform
    // self-combinations of up to `budget` factors.
    std::optional<Rational> best;
    auto search = [&](const Structure& host) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < n; ++i) {
            count *= host.carrier.size();
            if (count > cap) return;  // skip hosts whose tuple space is too large
        }
        std::vector<std::vector<Rational>> tables;
        for (const auto& f : basis.formulas) tables.push_back(eval_all(host, f, basis.vars));
        std::vector<std::vector<int>> cand_a, cand_b;
        std::size_t idx = 0;
        for_each_tuple(host.size(), static_cast<int>(n), [&](const std::vector<int>& tuple) {
            Point p(basis.size());
            for (std::size_t i = 0; i < basis.size(); ++i) p[i] = tables[i][idx];
            if (p == ta) cand_a.push_back(tuple);
            if (p == tb) cand_b.push_back(tuple);
            ++idx;
        });
        for (const auto& ca : cand_a)
            for (const auto& cb : cand_b) {
                Rational d = 0;
                for (std::size_t i = 0; i < n; ++i) d += host.dist(ca[i], cb[i]);
                if (!best || d < *best) best = d;
            }
    };

    search(m);
    for (int k = 2; k <= budget; ++k) {
        std::size_t size = 1;
        bool fits = true;
        for (int w = 0; w < k; ++w) {
            size *= m.carrier.size();
            if (size > cap) {
                fits = false;
                break;
            }
        }
        if (!fits) break;
        FinProbSpace uniform;
        for (int w = 0; w < k; ++w)
            uniform.atoms.push_back({"w" + std::to_string(w), Rational(1) / k});
        search(direct_multiple(uniform, m, cap));
    }

    out.upper = *best;  // a and b themselves co-realize their types in M
    return out;
}

std::pair<Signature, Structure> morleyize(const Structure& m,
                                          const std::vector<FormulaPtr>& fs) {
    Signature sig = m.sig;
    Structure out = m;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::string name = "P_" + std::to_string(i);
        if (sig.has_symbol(name) || name == "d")
            throw DomainError("predicate name '" + name + "' is already taken");
        std::set<std::string> fv = free_vars(fs[i]);
        std::vector<std::string> vars(fv.begin(), fv.end());
        auto [lo, hi] = value_interval(m.sig, fs[i]);
        sig.predicates.push_back({name, static_cast<int>(vars.size()), lo, hi,
                                  lipschitz_bound(m.sig, fs[i])});
        out.predicates.emplace(name, eval_all(m, fs[i], vars));
    }
    out.sig = sig;
    return {sig, out};
}

AffineApprox affine_approx_search(const FormulaPtr& target,
                                  const std::vector<Structure>& models,
                                  const FormulaBasis& basis, std::size_t cap) {
    require_valid(basis);
    if (models.empty()) throw DomainError("at least one model is required");
    for (const auto& v : free_vars(target))
        if (std::find(basis.vars.begin(), basis.vars.end(), v) == basis.vars.end())
            throw DomainError("target variable '" + v + "' is not a basis variable");

    const int k = static_cast<int>(basis.size());
    // Variables: offset, one coefficient per basis formula (all free), then
    // the Chebyshev error bound.
    LinearProgram lp = LinearProgram::make(k + 2);
    for (int j = 0; j <= k; ++j) lp.is_free[j] = true;
    lp.c[k + 1] = -1;

    for (const auto& m : models) {
        tuple_count(m.carrier.size(), basis.vars.size(), cap);
        std::vector<Rational> tv = eval_all(m, target, basis.vars);
        std::vector<std::vector<Rational>> tables;
        for (const auto& f : basis.formulas) tables.push_back(eval_all(m, f, basis.vars));
        for (std::size_t t = 0; t < tv.size(); ++t) {
            std::vector<Rational> row(k + 2);
            row[0] = 1;
            for (int i = 0; i < k; ++i) row[1 + i] = tables[i][t];
            row[k + 1] = -1;
            std::vector<Rational> neg(k + 2);
            for (int j = 0; j < k + 2; ++j) neg[j] = -row[j];
            neg[k + 1] = -1;
            lp.add_le(std::move(row), tv[t]);    //  c0 + c.b - eps <= target
            lp.add_le(std::move(neg), -tv[t]);   // -c0 - c.b - eps <= -target
        }
    }

    LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal) throw DomainError("approximation search failed");
    AffineApprox out;
    out.offset = r.primal[0];
    out.coefficients.assign(r.primal.begin() + 1, r.primal.begin() + 1 + k);
    out.error = r.primal[k + 1];
    return out;
}

TVReport tarski_vaught_check(const Structure& m, const std::vector<int>& a_subset,
                             const std::vector<FormulaPtr>& formulas, const std::string& x) {
    if (a_subset.empty()) throw DomainError("the subset must be nonempty");
    for (int e : a_subset)
        if (e < 0 || e >= m.size()) throw DomainError("subset element out of range");
    auto in_subset = [&](int e) {
        return std::find(a_subset.begin(), a_subset.end(), e) != a_subset.end();
    };
    for (const auto& g : m.sig.functions) {
        const auto& table = m.functions.at(g.name);
        bool closed = true;
        for_each_tuple(static_cast<int>(a_subset.size()), g.arity,
                       [&](const std::vector<int>& tuple) {
                           std::vector<int> arg(g.arity);
                           for (int i = 0; i < g.arity; ++i) arg[i] = a_subset[tuple[i]];
                           if (!in_subset(table[tuple_index(arg, m.carrier.size())]))
                               closed = false;
                       });
        if (!closed)
            throw DomainError("subset is not closed under function symbol '" + g.name + "'");
    }

    TVReport report;
    for (std::size_t fi = 0; fi < formulas.size(); ++fi) {
        auto fv = free_vars(formulas[fi]);
        fv.erase(x);
        std::vector<std::string> params(fv.begin(), fv.end());
        for_each_tuple(static_cast<int>(a_subset.size()), static_cast<int>(params.size()),
                       [&](const std::vector<int>& tuple) {
                           Assignment assign;
                           std::vector<int> actual(tuple.size());
                           for (std::size_t i = 0; i < params.size(); ++i) {
                               actual[i] = a_subset[tuple[i]];
                               assign[params[i]] = actual[i];
                           }
                           std::optional<Rational> over_m, over_a;
                           for (int c = 0; c < m.size(); ++c) {
                               assign[x] = c;
                               Rational v = eval(m, formulas[fi], assign);
                               if (!over_m || v > *over_m) over_m = v;
                               if (in_subset(c) && (!over_a || v > *over_a)) over_a = v;
                           }
                           if (*over_m != *over_a)
                               report.failures.push_back(
                                   {fi, actual, *over_m, *over_a});
                       });
    }
    return report;
}

}  // namespace afflog
