#include "afflog/modelalg.hpp"

#include <algorithm>

namespace afflog {

std::vector<std::string> FiniteField::check() const {
    std::vector<std::string> report = space.check();
    if (static_cast<int>(factors.size()) != space.size())
        report.push_back("factor count does not match the number of atoms");
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (!(factors[i].sig == factors[0].sig))
            report.push_back("factor " + std::to_string(i) + " has a different signature");
    return report;
}

namespace {

std::size_t product_size(const FiniteField& field, std::size_t cap) {
    std::size_t n = 1;
    for (const auto& m : field.factors) {
        n *= m.carrier.size();
        if (n > cap)
            throw DomainError("product carrier size exceeds the cap of " + std::to_string(cap));
        if (n == 0) throw DomainError("factor with empty carrier");
    }
    return n;
}

// Sections of the field, lexicographic with atom 0 most significant.
std::vector<Section> all_sections(const FiniteField& field, std::size_t n) {
    std::vector<Section> sections;
    sections.reserve(n);
    Section cur(field.factors.size(), 0);
    while (true) {
        sections.push_back(cur);
        int pos = static_cast<int>(cur.size()) - 1;
        while (pos >= 0 &&
               ++cur[pos] == static_cast<int>(field.factors[pos].carrier.size()))
            cur[pos--] = 0;
        if (pos < 0) break;
    }
    return sections;
}

}  // namespace

std::size_t section_index(const FiniteField& field, const Section& s) {
    std::size_t idx = 0;
    for (std::size_t w = 0; w < s.size(); ++w)
        idx = idx * field.factors[w].carrier.size() + static_cast<std::size_t>(s[w]);
    return idx;
}

Structure convex_combine(const FiniteField& field, std::size_t cap) {
    {
        auto report = field.check();
        if (!report.empty()) throw DomainError("invalid field: " + report.front());
    }
    const std::size_t n = product_size(field, cap);
    const std::size_t atoms = field.factors.size();
    const Signature& sig = field.factors[0].sig;

    std::vector<Section> sections = all_sections(field, n);

    Structure k;
    k.sig = sig;
    k.carrier.reserve(n);
    for (const auto& s : sections) {
        std::string label;
        for (std::size_t w = 0; w < atoms; ++w) {
            if (w) label += "|";
            label += field.factors[w].carrier[s[w]];
        }
        k.carrier.push_back(std::move(label));
    }

    k.metric.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational d = 0;
            for (std::size_t w = 0; w < atoms; ++w)
                d += field.space.atoms[w].weight * field.factors[w].dist(sections[i][w], sections[j][w]);
            k.metric[i * n + j] = std::move(d);
        }

    for (const auto& p : sig.predicates) {
        std::vector<Rational> table;
        table.reserve(1);
        for_each_tuple(static_cast<int>(n), p.arity, [&](const std::vector<int>& tuple) {
            Rational v = 0;
            std::vector<int> arg(p.arity);
            for (std::size_t w = 0; w < atoms; ++w) {
                for (int i = 0; i < p.arity; ++i) arg[i] = sections[tuple[i]][w];
                v += field.space.atoms[w].weight *
                     field.factors[w].predicates.at(p.name)[tuple_index(arg, field.factors[w].carrier.size())];
            }
            table.push_back(std::move(v));
        });
        k.predicates.emplace(p.name, std::move(table));
    }

    for (const auto& f : sig.functions) {
        std::vector<int> table;
        for_each_tuple(static_cast<int>(n), f.arity, [&](const std::vector<int>& tuple) {
            Section image(atoms);
            std::vector<int> arg(f.arity);
            for (std::size_t w = 0; w < atoms; ++w) {
                for (int i = 0; i < f.arity; ++i) arg[i] = sections[tuple[i]][w];
                image[w] = field.factors[w].functions.at(f.name)[tuple_index(arg, field.factors[w].carrier.size())];
            }
            table.push_back(static_cast<int>(section_index(field, image)));
        });
        k.functions.emplace(f.name, std::move(table));
    }

    return k;
}

Structure direct_multiple(const FinProbSpace& space, const Structure& m, std::size_t cap) {
    FiniteField field{space, std::vector<Structure>(space.size(), m)};
    return convex_combine(field, cap);
}

std::size_t diagonal_index(const FinProbSpace& space, const Structure& m, int a) {
    std::size_t idx = 0;
    for (int w = 0; w < space.size(); ++w) idx = idx * m.carrier.size() + a;
    return idx;
}

LosReport los_check(const FiniteField& field, const FormulaPtr& f,
                    const std::vector<std::pair<std::string, Section>>& sections,
                    std::size_t cap) {
    Structure k = convex_combine(field, cap);
    LosReport report;
    report.formula_class = classify(f);

    Assignment combined;
    for (const auto& [var, s] : sections)
        combined[var] = static_cast<int>(section_index(field, s));
    report.lhs = eval(k, f, combined);

    report.rhs = 0;
    for (std::size_t w = 0; w < field.factors.size(); ++w) {
        Assignment a;
        for (const auto& [var, s] : sections) a[var] = s[w];
        report.rhs += field.space.atoms[w].weight * eval(field.factors[w], f, a);
    }
    report.equal = report.lhs == report.rhs;
    return report;
}

Rational cr_defect(const Structure& s, const CRInstance& instance) {
    if (instance.formulas.empty()) throw DomainError("CR instance needs at least one formula");
    if (instance.weights.empty()) throw DomainError("CR instance needs at least one weight");
    Rational total = 0;
    for (const auto& w : instance.weights) {
        if (w < 0) throw DomainError("CR weights must be nonnegative");
        total += w;
    }
    if (total != 1) throw DomainError("CR weights must sum to 1");
    for (const auto& f : instance.formulas) {
        if (!is_affine(f)) throw DomainError("CR instance formulas must be affine");
        for (const auto& v : free_vars(f))
            if (v != instance.x &&
                std::find(instance.ys.begin(), instance.ys.end(), v) == instance.ys.end())
                throw DomainError("formula variable '" + v + "' not declared in the instance");
    }

    const int n = s.size();
    const std::size_t m = instance.weights.size();
    const std::size_t nf = instance.formulas.size();

    std::vector<std::string> vars = {instance.x};
    vars.insert(vars.end(), instance.ys.begin(), instance.ys.end());
    // tables[i][x * n^{|ys|} + y_index]
    std::vector<std::vector<Rational>> tables;
    for (const auto& f : instance.formulas) tables.push_back(eval_all(s, f, vars));

    std::size_t y_count = 1;
    for (std::size_t i = 0; i < instance.ys.size(); ++i) y_count *= n;

    Rational defect = 0;
    std::vector<Rational> value(nf);
    for (std::size_t y = 0; y < y_count; ++y) {
        // Candidates collapse to their formula-value vectors.
        std::vector<std::vector<Rational>> unique;
        for (int x = 0; x < n; ++x) {
            for (std::size_t i = 0; i < nf; ++i) value[i] = tables[i][x * y_count + y];
            if (std::find(unique.begin(), unique.end(), value) == unique.end())
                unique.push_back(value);
        }
        const std::size_t u = unique.size();
        std::vector<std::size_t> pick(m, 0);
        while (true) {
            std::vector<Rational> target(nf, 0);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < nf; ++i)
                    target[i] += instance.weights[j] * unique[pick[j]][i];
            std::optional<Rational> best;
            for (std::size_t z = 0; z < u; ++z) {
                Rational worst = 0;
                for (std::size_t i = 0; i < nf; ++i)
                    worst = std::max(worst, rabs(unique[z][i] - target[i]));
                if (!best || worst < *best) best = worst;
            }
            defect = std::max(defect, *best);

            int pos = static_cast<int>(m) - 1;
            while (pos >= 0 && ++pick[pos] == u) pick[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return defect;
}

QConvexReport qconvex_preservation_check(const FiniteField& field, const FormulaPtr& condition,
                                         std::size_t cap) {
    // Shape check: quantifier prefix over a max of affine formulas.
    FormulaPtr body = condition;
    while (body->kind == Formula::Kind::Sup || body->kind == Formula::Kind::Inf) body = body->left;
    if (!as_max_of_affine(body))
        throw DomainError("condition is not of q-convex shape (prefix over a max of affine formulas)");
    if (!free_vars(condition).empty())
        throw DomainError("q-convex condition must be a sentence");

    QConvexReport report;
    report.premise = true;
    for (const auto& m : field.factors) {
        report.factor_values.push_back(eval(m, condition, {}));
        if (report.factor_values.back() > 0) report.premise = false;
    }
    Structure k = convex_combine(field, cap);
    report.combined_value = eval(k, condition, {});
    report.conclusion = report.combined_value <= 0;
    report.preserved = !report.premise || report.conclusion;
    return report;
}

}  // namespace afflog
