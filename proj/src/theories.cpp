#include "afflog/theories.hpp"

#include <algorithm>
#include <numeric>

namespace afflog {

namespace {

const char* kReservedNames[] = {"mu", "join", "meet", "compl", "zero", "one",
                                "T", "Tinv", "d", "0", "1"};

bool reserved(const std::string& name) {
    for (const char* r : kReservedNames)
        if (name == r) return true;
    return false;
}

// Power-set measure algebra on weighted atoms: carrier index = bitmask.
Structure build_algebra(const std::vector<std::string>& atom_labels,
                        const std::vector<Rational>& weights) {
    const int n = static_cast<int>(weights.size());
    const int size = 1 << n;
    const int full = size - 1;

    auto mass = [&](int mask) {
        Rational m = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) m += weights[i];
        return m;
    };

    Structure s;
    s.sig.metric_bound = 1;
    s.sig.predicates.push_back({"mu", 1, Rational(0), Rational(1), Rational(1)});
    s.sig.functions.push_back({"join", 2, Rational(1)});
    s.sig.functions.push_back({"meet", 2, Rational(1)});
    s.sig.functions.push_back({"compl", 1, Rational(1)});
    s.sig.functions.push_back({"zero", 0, Rational(1)});
    s.sig.functions.push_back({"one", 0, Rational(1)});

    for (int mask = 0; mask < size; ++mask) {
        if (mask == 0) {
            s.carrier.push_back("0");
        } else if (mask == full) {
            s.carrier.push_back("1");
        } else {
            std::string label;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    if (!label.empty()) label += "+";
                    label += atom_labels[i];
                }
            s.carrier.push_back(std::move(label));
        }
    }

    s.metric.resize(static_cast<std::size_t>(size) * size);
    std::vector<Rational>& mu = s.predicates["mu"];
    mu.resize(size);
    for (int x = 0; x < size; ++x) {
        mu[x] = mass(x);
        for (int y = 0; y < size; ++y)
            s.metric[static_cast<std::size_t>(x) * size + y] = mass(x ^ y);
    }

    std::vector<int>&join = s.functions["join"], &meet = s.functions["meet"];
    join.resize(static_cast<std::size_t>(size) * size);
    meet.resize(static_cast<std::size_t>(size) * size);
    for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y) {
            join[static_cast<std::size_t>(x) * size + y] = x | y;
            meet[static_cast<std::size_t>(x) * size + y] = x & y;
        }
    std::vector<int>& complement = s.functions["compl"];
    complement.resize(size);
    for (int x = 0; x < size; ++x) complement[x] = full ^ x;
    s.functions["zero"] = {0};
    s.functions["one"] = {full};
    return s;
}

}  // namespace

std::vector<std::string> PrASpec::check() const {
    std::vector<std::string> report;
    if (weights.empty()) report.push_back("at least one atom is required");
    Rational total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0) report.push_back("atom weight " + std::to_string(i) + " not positive");
        total += weights[i];
    }
    if (!weights.empty() && total != 1) report.push_back("atom weights do not sum to 1");
    if (named.size() > weights.size()) report.push_back("more names than atoms");
    for (std::size_t i = 0; i < named.size(); ++i) {
        if (named[i].empty() || reserved(named[i]))
            report.push_back("atom name '" + named[i] + "' is reserved or empty");
        for (std::size_t j = i + 1; j < named.size(); ++j)
            if (named[i] == named[j]) report.push_back("duplicate atom name '" + named[i] + "'");
    }
    return report;
}

PraAlgebra build_pra(const PrASpec& spec, int atom_cap) {
    {
        auto report = spec.check();
        if (!report.empty()) throw DomainError("invalid algebra spec: " + report.front());
    }
    const int n = static_cast<int>(spec.weights.size());
    if (n > atom_cap)
        throw DomainError("atom count exceeds the cap of " + std::to_string(atom_cap));

    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i)
        labels[i] = i < static_cast<int>(spec.named.size()) ? spec.named[i]
                                                           : "a" + std::to_string(i);
    PraAlgebra alg{spec, build_algebra(labels, spec.weights)};
    for (std::size_t i = 0; i < spec.named.size(); ++i) {
        alg.structure.sig.functions.push_back({spec.named[i], 0, Rational(1)});
        alg.structure.functions[spec.named[i]] = {1 << i};
    }
    return alg;
}

std::vector<Rational> pra_cell_masses(const PraAlgebra& alg, const std::vector<int>& tuple) {
    const int n = static_cast<int>(tuple.size());
    const int size = 1 << alg.atoms();
    const int full = size - 1;
    for (int a : tuple)
        if (a < 0 || a >= size) throw DomainError("tuple element outside the carrier");
    const std::vector<Rational>& mu = alg.structure.predicates.at("mu");

    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(1) << n);
    for (int eps = 0; eps < (1 << n); ++eps) {
        int cell = full;
        for (int i = 0; i < n; ++i) {
            bool complemented = eps & (1 << (n - 1 - i));  // eps_0 most significant
            cell &= complemented ? (full ^ tuple[i]) : tuple[i];
        }
        out.push_back(mu[cell]);
    }
    return out;
}

FinMeasure pra_type_measure(const PraAlgebra& alg, const std::vector<int>& tuple) {
    const int n = static_cast<int>(tuple.size());
    std::vector<Rational> masses = pra_cell_masses(alg, tuple);
    FinMeasure nu;
    for (int eps = 0; eps < (1 << n); ++eps) {
        if (masses[eps] == 0) continue;
        Point p(n);
        for (int i = 0; i < n; ++i) p[i] = (eps >> (n - 1 - i)) & 1;
        nu.support.emplace_back(std::move(p), masses[eps]);
    }
    return nu;
}

Structure build_classical(const ClassicalSpec& spec) {
    const int n = static_cast<int>(spec.universe.size());
    if (n == 0) throw DomainError("empty universe");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (spec.universe[i] == spec.universe[j])
                throw DomainError("duplicate universe label '" + spec.universe[i] + "'");

    Structure s;
    s.sig.metric_bound = 1;
    s.carrier = spec.universe;
    s.metric.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.metric[static_cast<std::size_t>(i) * n + j] = (i == j) ? 0 : 1;

    for (const auto& r : spec.relations) {
        std::size_t expect = 1;
        for (int i = 0; i < r.arity; ++i) expect *= n;
        if (r.table.size() != expect)
            throw DomainError("relation '" + r.name + "' has a table of the wrong size");
        for (const auto& v : r.table)
            if (v != 0 && v != 1)
                throw DomainError("relation '" + r.name + "' has a non-boolean entry");
        s.sig.predicates.push_back({r.name, r.arity, Rational(0), Rational(1), Rational(1)});
        s.predicates.emplace(r.name, r.table);
    }
    {
        auto report = s.sig.check();
        if (!report.empty()) throw DomainError("invalid signature: " + report.front());
    }
    return s;
}

std::vector<FormulaPtr> classicality_conditions(const Signature& sig) {
    auto condition = [](FormulaPtr atom, int arity) {
        FormulaPtr body =
            f_min(atom, f_sum(f_one(), f_scale(-1, atom)));
        for (int i = arity - 1; i >= 0; --i) body = f_sup("x" + std::to_string(i), body);
        return body;
    };

    std::vector<FormulaPtr> out;
    for (const auto& p : sig.predicates) {
        std::vector<Term> args;
        for (int i = 0; i < p.arity; ++i) args.push_back(t_var("x" + std::to_string(i)));
        out.push_back(condition(f_atom(p.name, std::move(args)), p.arity));
    }
    out.push_back(condition(f_dist(t_var("x0"), t_var("x1")), 2));
    return out;
}

std::vector<std::string> PMPSystem::check() const {
    std::vector<std::string> report = base.check();
    const int n = base.size();
    if (static_cast<int>(transform.size()) != n) {
        report.push_back("transform length does not match the atom count");
        return report;
    }
    std::vector<bool> hit(n, false);
    for (int i = 0; i < n; ++i) {
        if (transform[i] < 0 || transform[i] >= n) {
            report.push_back("transform image out of range at " + std::to_string(i));
            return report;
        }
        if (hit[transform[i]])
            report.push_back("transform is not injective at " + std::to_string(i));
        hit[transform[i]] = true;
        if (base.atoms[transform[i]].weight != base.atoms[i].weight)
            report.push_back("transform does not preserve the weight of atom " +
                             std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        if (base.atoms[i].label == "0" || base.atoms[i].label == "1")
            report.push_back("atom label '" + base.atoms[i].label + "' is reserved");
    return report;
}

PmpAlgebra build_pmp_z(const PMPSystem& system, int atom_cap) {
    {
        auto report = system.check();
        if (!report.empty()) throw DomainError("invalid system: " + report.front());
    }
    const int n = system.base.size();
    if (n > atom_cap)
        throw DomainError("atom count exceeds the cap of " + std::to_string(atom_cap));

    std::vector<std::string> labels(n);
    std::vector<Rational> weights(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = system.base.atoms[i].label;
        weights[i] = system.base.atoms[i].weight;
    }
    PmpAlgebra alg{system, build_algebra(labels, weights)};

    auto apply = [&](const std::vector<int>& perm, int mask) {
        int out = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) out |= 1 << perm[i];
        return out;
    };
    std::vector<int> inverse(n);
    for (int i = 0; i < n; ++i) inverse[system.transform[i]] = i;

    const int size = 1 << n;
    std::vector<int> t_table(size), tinv_table(size);
    for (int mask = 0; mask < size; ++mask) {
        t_table[mask] = apply(system.transform, mask);
        tinv_table[mask] = apply(inverse, mask);
    }
    alg.structure.sig.functions.push_back({"T", 1, Rational(1)});
    alg.structure.sig.functions.push_back({"Tinv", 1, Rational(1)});
    alg.structure.functions["T"] = std::move(t_table);
    alg.structure.functions["Tinv"] = std::move(tinv_table);
    return alg;
}

std::vector<std::vector<int>> orbits(const PMPSystem& system) {
    {
        auto report = system.check();
        if (!report.empty()) throw DomainError("invalid system: " + report.front());
    }
    const int n = system.base.size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<int> orbit;
        for (int a = start; !seen[a]; a = system.transform[a]) {
            seen[a] = true;
            orbit.push_back(a);
        }
        out.push_back(std::move(orbit));
    }
    return out;
}

bool is_ergodic(const PMPSystem& system) { return orbits(system).size() == 1; }

ErgodicDecomposition ergodic_decompose(const PMPSystem& system, int atom_cap) {
    auto obs = orbits(system);
    ErgodicDecomposition dec;

    for (const auto& orbit : obs) {
        Rational mass = 0;
        for (int a : orbit) mass += system.base.atoms[a].weight;
        PMPSystem comp;
        const int len = static_cast<int>(orbit.size());
        for (int p = 0; p < len; ++p)
            comp.base.atoms.push_back(
                {system.base.atoms[orbit[p]].label, system.base.atoms[orbit[p]].weight / mass});
        for (int p = 0; p < len; ++p) comp.transform.push_back((p + 1) % len);
        dec.components.push_back({mass, std::move(comp)});
    }

    // Recombination audit: the combined algebra of the components maps
    // onto the system's algebra by taking unions of the orbit subsets.
    Structure m = build_pmp_z(system, atom_cap).structure;
    FiniteField field;
    for (std::size_t j = 0; j < dec.components.size(); ++j) {
        field.space.atoms.push_back({"o" + std::to_string(j), dec.components[j].weight});
        field.factors.push_back(build_pmp_z(dec.components[j].system, atom_cap).structure);
    }
    Structure k = convex_combine(field);

    const std::size_t total = k.carrier.size();
    dec.iso.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        int mask = 0;
        for (std::size_t j = dec.components.size(); j-- > 0;) {
            std::size_t fsize = field.factors[j].carrier.size();
            int sub = static_cast<int>(rest % fsize);
            rest /= fsize;
            for (std::size_t p = 0; p < obs[j].size(); ++p)
                if (sub & (1 << p)) mask |= 1 << obs[j][p];
        }
        dec.iso[idx] = static_cast<std::size_t>(mask);
    }

    bool ok = total == m.carrier.size();
    for (std::size_t i = 0; ok && i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (k.dist(static_cast<int>(i), static_cast<int>(j)) !=
                m.dist(static_cast<int>(dec.iso[i]), static_cast<int>(dec.iso[j]))) {
                ok = false;
                break;
            }
    for (const auto& p : m.sig.predicates) {
        const auto &kt = k.predicates.at(p.name), &mt = m.predicates.at(p.name);
        for_each_tuple(static_cast<int>(total), p.arity, [&](const std::vector<int>& tuple) {
            std::vector<int> image(tuple.size());
            for (std::size_t i = 0; i < tuple.size(); ++i)
                image[i] = static_cast<int>(dec.iso[tuple[i]]);
            if (kt[tuple_index(tuple, total)] != mt[tuple_index(image, total)]) ok = false;
        });
        if (!ok) break;
    }
    for (const auto& f : m.sig.functions) {
        if (!ok) break;
        const auto &kt = k.functions.at(f.name), &mt = m.functions.at(f.name);
        for_each_tuple(static_cast<int>(total), f.arity, [&](const std::vector<int>& tuple) {
            std::vector<int> image(tuple.size());
            for (std::size_t i = 0; i < tuple.size(); ++i)
                image[i] = static_cast<int>(dec.iso[tuple[i]]);
            if (dec.iso[kt[tuple_index(tuple, total)]] !=
                static_cast<std::size_t>(mt[tuple_index(image, total)]))
                ok = false;
        });
    }
    dec.recombination_ok = ok;
    return dec;
}

std::vector<std::pair<int, Rational>> canonical_form(const PMPSystem& system) {
    std::vector<std::pair<int, Rational>> out;
    for (const auto& orbit : orbits(system)) {
        Rational mass = 0;
        for (int a : orbit) mass += system.base.atoms[a].weight;
        out.emplace_back(static_cast<int>(orbit.size()), mass);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool isomorphic(const PMPSystem& a, const PMPSystem& b) {
    return canonical_form(a) == canonical_form(b);
}

FinMeasure pmp_qf_type_measure(const PmpAlgebra& alg, const std::vector<int>& tuple,
                               int horizon) {
    if (horizon < 0) throw DomainError("negative horizon");
    const int n = static_cast<int>(tuple.size());
    const int window = 2 * horizon + 1;
    const int bits = n * window;
    if (bits > 16) throw DomainError("cylinder cell count too large");
    const int atoms = static_cast<int>(alg.system.base.size());
    const int size = 1 << atoms;
    const int full = size - 1;
    for (int a : tuple)
        if (a < 0 || a >= size) throw DomainError("tuple element outside the carrier");

    const std::vector<int>& t_table = alg.structure.functions.at("T");
    const std::vector<int>& tinv_table = alg.structure.functions.at("Tinv");
    // translated[i][t + horizon] = T^t applied to tuple[i]
    std::vector<std::vector<int>> translated(n, std::vector<int>(window));
    for (int i = 0; i < n; ++i) {
        translated[i][horizon] = tuple[i];
        for (int t = 1; t <= horizon; ++t) {
            translated[i][horizon + t] = t_table[translated[i][horizon + t - 1]];
            translated[i][horizon - t] = tinv_table[translated[i][horizon - t + 1]];
        }
    }

    const std::vector<Rational>& mu = alg.structure.predicates.at("mu");
    FinMeasure nu;
    for (int eps = 0; eps < (1 << bits); ++eps) {
        int cell = full;
        for (int b = 0; b < bits; ++b) {
            int set = translated[b / window][b % window];
            bool complemented = eps & (1 << (bits - 1 - b));  // first coordinate most significant
            cell &= complemented ? (full ^ set) : set;
        }
        if (mu[cell] == 0) continue;
        Point p(bits);
        for (int b = 0; b < bits; ++b) p[b] = (eps >> (bits - 1 - b)) & 1;
        nu.support.emplace_back(std::move(p), mu[cell]);
    }
    return nu;
}

}  // namespace afflog
