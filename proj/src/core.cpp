#include "afflog/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace afflog {

using nlohmann::json;

bool operator==(const PredicateSymbol& a, const PredicateSymbol& b) {
    return a.name == b.name && a.arity == b.arity && a.lo == b.lo && a.hi == b.hi &&
           a.lipschitz == b.lipschitz;
}

bool operator==(const FunctionSymbol& a, const FunctionSymbol& b) {
    return a.name == b.name && a.arity == b.arity && a.lipschitz == b.lipschitz;
}

const PredicateSymbol* Signature::find_predicate(const std::string& name) const {
    for (const auto& p : predicates)
        if (p.name == name) return &p;
    return nullptr;
}

const FunctionSymbol* Signature::find_function(const std::string& name) const {
    for (const auto& f : functions)
        if (f.name == name) return &f;
    return nullptr;
}

bool Signature::has_symbol(const std::string& name) const {
    return name == "d" || find_predicate(name) || find_function(name);
}

std::vector<std::string> Signature::check() const {
    std::vector<std::string> report;
    std::set<std::string> names;
    auto unique = [&](const std::string& n) {
        if (n == "d") report.push_back("symbol name 'd' is reserved for the metric");
        if (!names.insert(n).second) report.push_back("duplicate symbol name '" + n + "'");
    };
    if (metric_bound <= 0) report.push_back("metric bound must be positive");
    for (const auto& p : predicates) {
        unique(p.name);
        if (p.arity < 0) report.push_back("negative arity for '" + p.name + "'");
        if (p.lo > p.hi) report.push_back("empty value interval for '" + p.name + "'");
        if (p.lipschitz <= 0) report.push_back("non-positive Lipschitz constant for '" + p.name + "'");
    }
    for (const auto& f : functions) {
        unique(f.name);
        if (f.arity < 0) report.push_back("negative arity for '" + f.name + "'");
        if (f.lipschitz <= 0) report.push_back("non-positive Lipschitz constant for '" + f.name + "'");
    }
    return report;
}

int Structure::element_index(const std::string& label) const {
    for (std::size_t i = 0; i < carrier.size(); ++i)
        if (carrier[i] == label) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> FinProbSpace::check() const {
    std::vector<std::string> report;
    if (atoms.empty()) report.push_back("probability space has no atoms");
    Rational total = 0;
    std::set<std::string> labels;
    for (const auto& a : atoms) {
        if (a.weight <= 0) report.push_back("non-positive weight on atom '" + a.label + "'");
        if (!labels.insert(a.label).second) report.push_back("duplicate atom label '" + a.label + "'");
        total += a.weight;
    }
    if (!atoms.empty() && total != 1)
        report.push_back("atom weights sum to " + format_rational(total) + ", expected 1");
    return report;
}

std::size_t tuple_index(const std::vector<int>& tuple, std::size_t carrier_size) {
    std::size_t idx = 0;
    for (int t : tuple) idx = idx * carrier_size + static_cast<std::size_t>(t);
    return idx;
}

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::string tuple_str(const Structure& s, const std::vector<int>& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ",";
        out += s.carrier[tuple[i]];
    }
    return out + ")";
}

}  // namespace

std::vector<std::string> validate_structure(const Structure& s) {
    std::vector<std::string> report = s.sig.check();
    const std::size_t n = s.carrier.size();
    if (n == 0) {
        report.push_back("carrier is empty");
        return report;
    }
    {
        std::set<std::string> labels(s.carrier.begin(), s.carrier.end());
        if (labels.size() != n) report.push_back("duplicate carrier labels");
    }
    if (s.metric.size() != n * n) {
        report.push_back("metric table has wrong size");
        return report;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& dij = s.metric[i * n + j];
            if (i == j && dij != 0)
                report.push_back("metric reflexivity violated at (" + s.carrier[i] + ")");
            if (i != j && dij == 0)
                report.push_back("metric separation violated at (" + s.carrier[i] + "," + s.carrier[j] + ")");
            if (dij < 0)
                report.push_back("negative distance at (" + s.carrier[i] + "," + s.carrier[j] + ")");
            if (dij > s.sig.metric_bound)
                report.push_back("metric bound exceeded at (" + s.carrier[i] + "," + s.carrier[j] + ")");
            if (dij != s.metric[j * n + i])
                report.push_back("metric symmetry violated at (" + s.carrier[i] + "," + s.carrier[j] + ")");
            for (std::size_t k = 0; k < n; ++k)
                if (dij > s.metric[i * n + k] + s.metric[k * n + j]) {
                    report.push_back("triangle inequality violated at (" + s.carrier[i] + "," +
                                     s.carrier[j] + ") via " + s.carrier[k]);
                    break;
                }
        }

    for (const auto& p : s.sig.predicates) {
        auto it = s.predicates.find(p.name);
        if (it == s.predicates.end()) {
            report.push_back("missing predicate table for '" + p.name + "'");
            continue;
        }
        const auto& table = it->second;
        if (table.size() != ipow(n, p.arity)) {
            report.push_back("predicate table for '" + p.name + "' has wrong size");
            continue;
        }
        for (const Rational& v : table)
            if (v < p.lo || v > p.hi) {
                report.push_back("predicate '" + p.name + "' takes a value outside its interval");
                break;
            }
        // Lipschitz with the sum metric on tuples.
        bool violated = false;
        for_each_tuple(static_cast<int>(n), p.arity, [&](const std::vector<int>& a) {
            if (violated) return;
            for_each_tuple(static_cast<int>(n), p.arity, [&](const std::vector<int>& b) {
                if (violated) return;
                Rational dist = 0;
                for (int i = 0; i < p.arity; ++i) dist += s.metric[a[i] * n + b[i]];
                Rational diff = rabs(table[tuple_index(a, n)] - table[tuple_index(b, n)]);
                if (diff > p.lipschitz * dist) {
                    report.push_back("Lipschitz violation for '" + p.name + "' at " +
                                     tuple_str(s, a) + " vs " + tuple_str(s, b));
                    violated = true;
                }
            });
        });
    }
    for (const auto& [name, _] : s.predicates)
        if (!s.sig.find_predicate(name))
            report.push_back("predicate table for unknown symbol '" + name + "'");

    for (const auto& f : s.sig.functions) {
        auto it = s.functions.find(f.name);
        if (it == s.functions.end()) {
            report.push_back("missing function table for '" + f.name + "'");
            continue;
        }
        const auto& table = it->second;
        if (table.size() != ipow(n, f.arity)) {
            report.push_back("function table for '" + f.name + "' has wrong size");
            continue;
        }
        bool in_range = true;
        for (int v : table)
            if (v < 0 || v >= static_cast<int>(n)) in_range = false;
        if (!in_range) {
            report.push_back("function '" + f.name + "' maps outside the carrier");
            continue;
        }
        bool violated = false;
        for_each_tuple(static_cast<int>(n), f.arity, [&](const std::vector<int>& a) {
            if (violated) return;
            for_each_tuple(static_cast<int>(n), f.arity, [&](const std::vector<int>& b) {
                if (violated) return;
                Rational dist = 0;
                for (int i = 0; i < f.arity; ++i) dist += s.metric[a[i] * n + b[i]];
                int fa = table[tuple_index(a, n)];
                int fb = table[tuple_index(b, n)];
                if (s.metric[fa * n + fb] > f.lipschitz * dist) {
                    report.push_back("Lipschitz violation for '" + f.name + "' at " +
                                     tuple_str(s, a) + " vs " + tuple_str(s, b));
                    violated = true;
                }
            });
        });
    }
    for (const auto& [name, _] : s.functions)
        if (!s.sig.find_function(name))
            report.push_back("function table for unknown symbol '" + name + "'");

    return report;
}

// --- JSON ---

namespace {

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("expected a rational (string \"p/q\" or integer), got " + j.dump());
}

json rational_to_json(const Rational& r) { return json(format_rational(r)); }

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

namespace {

Structure load_structure_impl(const json& j) {
    Structure s;
    const json& sig = j.at("signature");
    s.sig.metric_bound = sig.contains("metric_bound") ? rational_from_json(sig.at("metric_bound")) : Rational(1);
    if (sig.contains("predicates"))
        for (const auto& p : sig.at("predicates")) {
            PredicateSymbol ps;
            ps.name = p.at("name").get<std::string>();
            ps.arity = p.at("arity").get<int>();
            ps.lo = rational_from_json(p.at("interval").at(0));
            ps.hi = rational_from_json(p.at("interval").at(1));
            ps.lipschitz = rational_from_json(p.at("lipschitz"));
            s.sig.predicates.push_back(std::move(ps));
        }
    if (sig.contains("functions"))
        for (const auto& f : sig.at("functions")) {
            FunctionSymbol fs;
            fs.name = f.at("name").get<std::string>();
            fs.arity = f.at("arity").get<int>();
            fs.lipschitz = rational_from_json(f.at("lipschitz"));
            s.sig.functions.push_back(std::move(fs));
        }
    {
        auto sig_report = s.sig.check();
        if (!sig_report.empty()) throw ParseError("bad signature: " + sig_report.front());
    }
    for (const auto& c : j.at("carrier")) s.carrier.push_back(c.get<std::string>());
    const std::size_t n = s.carrier.size();
    for (const auto& row : j.at("metric")) {
        if (!row.is_array() || row.size() != n) throw ParseError("metric row has wrong length");
        for (const auto& v : row) s.metric.push_back(rational_from_json(v));
    }
    if (s.metric.size() != n * n) throw ParseError("metric table has wrong size");
    if (j.contains("predicates"))
        for (const auto& [name, table] : j.at("predicates").items()) {
            std::vector<Rational> values;
            for (const auto& v : table) values.push_back(rational_from_json(v));
            s.predicates.emplace(name, std::move(values));
        }
    if (j.contains("functions"))
        for (const auto& [name, table] : j.at("functions").items()) {
            std::vector<int> values;
            for (const auto& v : table) {
                int idx = s.element_index(v.get<std::string>());
                if (idx < 0)
                    throw ParseError("function '" + name + "' maps to unknown element '" +
                                     v.get<std::string>() + "'");
                values.push_back(idx);
            }
            s.functions.emplace(name, std::move(values));
        }
    return s;
}

}  // namespace

Structure load_structure(const std::string& json_text) {
    json j = parse_document(json_text);
    try {
        return load_structure_impl(j);
    } catch (const json::exception& e) {
        throw ParseError(e.what());  // missing keys, wrong value kinds
    }
}

std::string store_structure(const Structure& s) {
    json j;
    json sig;
    sig["metric_bound"] = rational_to_json(s.sig.metric_bound);
    sig["predicates"] = json::array();
    for (const auto& p : s.sig.predicates) {
        json jp;
        jp["name"] = p.name;
        jp["arity"] = p.arity;
        jp["interval"] = json::array({rational_to_json(p.lo), rational_to_json(p.hi)});
        jp["lipschitz"] = rational_to_json(p.lipschitz);
        sig["predicates"].push_back(jp);
    }
    sig["functions"] = json::array();
    for (const auto& f : s.sig.functions) {
        json jf;
        jf["name"] = f.name;
        jf["arity"] = f.arity;
        jf["lipschitz"] = rational_to_json(f.lipschitz);
        sig["functions"].push_back(jf);
    }
    j["signature"] = sig;
    j["carrier"] = s.carrier;
    const std::size_t n = s.carrier.size();
    json metric = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(rational_to_json(s.metric[i * n + k]));
        metric.push_back(row);
    }
    j["metric"] = metric;
    json preds = json::object();
    for (const auto& [name, table] : s.predicates) {
        json t = json::array();
        for (const auto& v : table) t.push_back(rational_to_json(v));
        preds[name] = t;
    }
    j["predicates"] = preds;
    json funcs = json::object();
    for (const auto& [name, table] : s.functions) {
        json t = json::array();
        for (int v : table) t.push_back(s.carrier[v]);
        funcs[name] = t;
    }
    j["functions"] = funcs;
    return j.dump(2) + "\n";
}

FinProbSpace load_prob_space(const std::string& json_text) {
    json j = parse_document(json_text);
    FinProbSpace sp;
    try {
        for (const auto& a : j.at("atoms"))
            sp.atoms.push_back({a.at("label").get<std::string>(), rational_from_json(a.at("weight"))});
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    auto report = sp.check();
    if (!report.empty()) throw ParseError("bad probability space: " + report.front());
    return sp;
}

std::string store_prob_space(const FinProbSpace& sp) {
    json j;
    j["atoms"] = json::array();
    for (const auto& a : sp.atoms) {
        json ja;
        ja["label"] = a.label;
        ja["weight"] = rational_to_json(a.weight);
        j["atoms"].push_back(ja);
    }
    return j.dump(2) + "\n";
}

}  // namespace afflog
