// Deterministic command-line front end. Every subcommand reads one JSON
// job document (shallow merge of the --input files, in order), writes one
// JSON result document (or a plain-text rendering with --pretty), and
// exits 0 on success, 1 on a domain/parse error (with a structured error
// document), 2 on a usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "afflog/convex.hpp"
#include "afflog/eval.hpp"
#include "afflog/modelalg.hpp"
#include "afflog/theories.hpp"
#include "afflog/typespace.hpp"

using nlohmann::json;
using namespace afflog;

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string output;
    bool pretty = false;
    std::size_t cap = kDefaultCarrierCap;
    int budget = 3;
    int horizon = 1;
};

Rational to_rational(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("expected a rational (string \"p/q\" or integer), got " + j.dump());
}

json from_rational(const Rational& r) { return json(format_rational(r)); }

const json& need(const json& job, const std::string& key) {
    if (!job.contains(key)) throw ParseError("missing input key '" + key + "'");
    return job.at(key);
}

Structure get_structure(const json& j) { return load_structure(j.dump()); }

// A model is either an explicit structure document ("structure"), a
// probability-algebra spec ("pra": {"weights": [...], "named": [...]}), or
// a measure-preserving system ("system": {"atoms": ..., "transform": ...}).
PMPSystem get_system(const json& j);

Structure get_model(const json& job) {
    if (job.contains("structure")) return get_structure(job.at("structure"));
    if (job.contains("pra")) {
        const json& p = job.at("pra");
        PrASpec spec;
        for (const auto& w : p.contains("weights") ? p.at("weights") : json::array())
            spec.weights.push_back(to_rational(w));
        if (p.contains("named"))
            for (const auto& n : p.at("named")) spec.named.push_back(n.get<std::string>());
        return build_pra(spec).structure;
    }
    if (job.contains("system")) return build_pmp_z(get_system(job.at("system"))).structure;
    throw ParseError("missing input key 'structure' (or 'pra' / 'system')");
}

FinProbSpace get_space(const json& j) { return load_prob_space(j.dump()); }

FiniteField get_field(const json& job) {
    FiniteField field;
    field.space = get_space(need(job, "space"));
    for (const auto& f : need(job, "factors")) field.factors.push_back(get_structure(f));
    auto report = field.check();
    if (!report.empty()) throw ParseError("bad field: " + report.front());
    return field;
}

int get_element(const Structure& s, const json& j) {
    int idx = -1;
    if (j.is_number_integer())
        idx = j.get<int>();
    else if (j.is_string())
        idx = s.element_index(j.get<std::string>());
    else
        throw ParseError("expected a carrier element (label or index), got " + j.dump());
    if (idx < 0 || idx >= s.size()) throw ParseError("unknown carrier element " + j.dump());
    return idx;
}

std::vector<int> get_tuple(const Structure& s, const json& j) {
    if (!j.is_array()) throw ParseError("expected a tuple (array of elements)");
    std::vector<int> out;
    for (const auto& e : j) out.push_back(get_element(s, e));
    return out;
}

PointCloud get_cloud(const json& j) {
    PointCloud c;
    c.dim = need(j, "dim").get<int>();
    for (const auto& p : need(j, "points")) {
        Point point;
        for (const auto& v : p) point.push_back(to_rational(v));
        c.points.push_back(std::move(point));
    }
    auto report = c.check();
    if (!report.empty()) throw ParseError("bad point cloud: " + report.front());
    return c;
}

json cloud_to_json(const PointCloud& c) {
    json j;
    j["dim"] = c.dim;
    j["points"] = json::array();
    for (const auto& p : c.points) {
        json row = json::array();
        for (const auto& v : p) row.push_back(from_rational(v));
        j["points"].push_back(row);
    }
    return j;
}

FinMeasure get_measure(const json& j) {
    FinMeasure mu;
    for (const auto& s : need(j, "support")) {
        Point p;
        for (const auto& v : need(s, "point")) p.push_back(to_rational(v));
        mu.support.emplace_back(std::move(p), to_rational(need(s, "weight")));
    }
    auto report = mu.check();
    if (!report.empty()) throw ParseError("bad measure: " + report.front());
    return mu;
}

json measure_to_json(const FinMeasure& mu) {
    json j;
    j["support"] = json::array();
    for (const auto& [p, w] : mu.support) {
        json s;
        s["point"] = json::array();
        for (const auto& v : p) s["point"].push_back(from_rational(v));
        s["weight"] = from_rational(w);
        j["support"].push_back(s);
    }
    return j;
}

std::vector<std::string> get_vars(const json& job) {
    if (job.contains("vars")) {
        std::vector<std::string> vars;
        for (const auto& v : job.at("vars")) vars.push_back(v.get<std::string>());
        return vars;
    }
    int arity = need(job, "arity").get<int>();
    if (arity < 0) throw ParseError("negative arity");
    std::vector<std::string> vars;
    for (int i = 0; i < arity; ++i) vars.push_back("x" + std::to_string(i));
    return vars;
}

FormulaBasis get_basis(const json& job, const Signature& sig) {
    FormulaBasis basis;
    basis.vars = get_vars(job);
    for (const auto& f : need(job, "basis"))
        basis.formulas.push_back(parse_formula(sig, f.get<std::string>()));
    auto report = basis.check();
    if (!report.empty()) throw ParseError("bad basis: " + report.front());
    return basis;
}

PMPSystem get_system(const json& j) {
    PMPSystem sys;
    sys.base = get_space(json{{"atoms", need(j, "atoms")}});
    for (const auto& t : need(j, "transform")) sys.transform.push_back(t.get<int>());
    auto report = sys.check();
    if (!report.empty()) throw ParseError("bad system: " + report.front());
    return sys;
}

json system_to_json(const PMPSystem& sys) {
    json j;
    j["atoms"] = json::array();
    for (const auto& a : sys.base.atoms)
        j["atoms"].push_back({{"label", a.label}, {"weight", from_rational(a.weight)}});
    j["transform"] = sys.transform;
    return j;
}

json tuples_to_labels(const Structure& s, const std::vector<std::vector<int>>& tuples) {
    json out = json::array();
    for (const auto& t : tuples) {
        json row = json::array();
        for (int e : t) row.push_back(s.carrier[e]);
        out.push_back(row);
    }
    return out;
}

// --- subcommand handlers ---

json cmd_eval(const json& job, const Options&) {
    Structure s = get_model(job);
    FormulaPtr f = parse_formula(s.sig, need(job, "formula").get<std::string>());
    Assignment a;
    if (job.contains("assignment"))
        for (const auto& [var, val] : job.at("assignment").items())
            a[var] = get_element(s, val);
    return json{{"value", from_rational(eval(s, f, a))}};
}

json cmd_combine(const json& job, const Options& opt) {
    return json::parse(store_structure(convex_combine(get_field(job), opt.cap)));
}

json cmd_l1(const json& job, const Options& opt) {
    FinProbSpace space = get_space(need(job, "space"));
    Structure m = get_structure(need(job, "structure"));
    return json::parse(store_structure(direct_multiple(space, m, opt.cap)));
}

json cmd_los_check(const json& job, const Options& opt) {
    FiniteField field = get_field(job);
    FormulaPtr f = parse_formula(field.factors[0].sig, need(job, "formula").get<std::string>());
    std::vector<std::pair<std::string, Section>> sections;
    for (const auto& [var, vals] : need(job, "sections").items()) {
        if (!vals.is_array() || vals.size() != field.factors.size())
            throw ParseError("section for '" + var + "' needs one element per factor");
        Section s;
        for (std::size_t w = 0; w < field.factors.size(); ++w)
            s.push_back(get_element(field.factors[w], vals[w]));
        sections.emplace_back(var, std::move(s));
    }
    LosReport r = los_check(field, f, sections, opt.cap);
    return json{{"lhs", from_rational(r.lhs)},
                {"rhs", from_rational(r.rhs)},
                {"equal", r.equal},
                {"class", to_string(r.formula_class)}};
}

json cmd_types(const json& job, const Options& opt) {
    Structure s = get_model(job);
    FormulaBasis basis = get_basis(job, s.sig);
    TypeCloud tc = realized_types(s, basis, opt.cap);
    json out;
    out["basis"] = need(job, "basis");
    out["vars"] = basis.vars;
    out["cloud"] = cloud_to_json(tc.cloud);
    out["provenance"] = json::array();
    for (const auto& tuples : tc.provenance) out["provenance"].push_back(tuples_to_labels(s, tuples));
    return out;
}

json cmd_extreme(const json& job, const Options&) {
    PointCloud cloud = get_cloud(need(job, "cloud"));
    PointCloud v = vertices(cloud);
    json out;
    out["cloud"] = cloud_to_json(v);
    if (job.contains("provenance")) {
        const json& prov = job.at("provenance");
        if (!prov.is_array() || prov.size() != cloud.points.size())
            throw ParseError("provenance must list one entry per cloud point");
        json kept = json::array();
        for (const auto& p : v.points) {
            auto it = std::find(cloud.points.begin(), cloud.points.end(), p);
            kept.push_back(prov[it - cloud.points.begin()]);
        }
        out["provenance"] = kept;
    }
    return out;
}

json cmd_simplex_check(const json& job, const Options&) {
    SimplexResult r = is_simplex(get_cloud(need(job, "cloud")));
    json out;
    out["is_simplex"] = r.is_simplex;
    out["vertices"] = r.vertex_count;
    if (!r.is_simplex) {
        json w;
        w["point"] = json::array();
        for (const auto& v : *r.witness_point) w["point"].push_back(from_rational(v));
        w["rep_a"] = measure_to_json(*r.rep_a);
        w["rep_b"] = measure_to_json(*r.rep_b);
        out["witness"] = w;
    }
    return out;
}

json cmd_envelope(const json& job, const Options&) {
    PointCloud cloud = get_cloud(need(job, "cloud"));
    std::vector<Rational> values;
    for (const auto& v : need(job, "values")) values.push_back(to_rational(v));
    Point p;
    for (const auto& v : need(job, "point")) p.push_back(to_rational(v));
    return json{{"value", from_rational(concave_envelope(cloud, values, p))}};
}

json cmd_choquet_leq(const json& job, const Options&) {
    ChoquetResult r = choquet_leq(get_measure(need(job, "mu")), get_measure(need(job, "nu")));
    json out;
    out["leq"] = r.leq;
    if (r.leq) {
        json d = json::array();
        for (const auto& row : r.dilation) {
            json jr = json::array();
            for (const auto& v : row) jr.push_back(from_rational(v));
            d.push_back(jr);
        }
        out["dilation"] = d;
    }
    return out;
}

json cmd_maximal_rep(const json& job, const Options&) {
    PointCloud cloud = get_cloud(need(job, "cloud"));
    Point p;
    for (const auto& v : need(job, "point")) p.push_back(to_rational(v));
    return measure_to_json(maximal_rep(p, cloud));
}

json cmd_decompose(const json& job, const Options&) {
    PMPSystem sys = get_system(need(job, "system"));
    ErgodicDecomposition dec = ergodic_decompose(sys);
    json out;
    out["ergodic"] = is_ergodic(sys);
    out["components"] = json::array();
    for (const auto& c : dec.components)
        out["components"].push_back(
            {{"weight", from_rational(c.weight)}, {"system", system_to_json(c.system)}});
    out["recombination_ok"] = dec.recombination_ok;
    out["canonical_form"] = json::array();
    for (const auto& [len, mass] : canonical_form(sys))
        out["canonical_form"].push_back(json::array({len, from_rational(mass)}));
    return out;
}

json cmd_morleyize(const json& job, const Options&) {
    Structure s = get_structure(need(job, "structure"));
    std::vector<FormulaPtr> fs;
    for (const auto& f : need(job, "formulas"))
        fs.push_back(parse_formula(s.sig, f.get<std::string>()));
    auto [sig, expanded] = morleyize(s, fs);
    return json::parse(store_structure(expanded));
}

json cmd_approx(const json& job, const Options& opt) {
    std::vector<Structure> models;
    for (const auto& m : need(job, "models")) models.push_back(get_structure(m));
    if (models.empty()) throw ParseError("at least one model is required");
    FormulaBasis basis = get_basis(job, models[0].sig);
    FormulaPtr target = parse_formula(models[0].sig, need(job, "target").get<std::string>());
    AffineApprox r = affine_approx_search(target, models, basis, opt.cap);
    json out;
    out["offset"] = from_rational(r.offset);
    out["coefficients"] = json::array();
    for (const auto& c : r.coefficients) out["coefficients"].push_back(from_rational(c));
    out["error"] = from_rational(r.error);
    return out;
}

json cmd_classify(const json& job, const Options&) {
    json wrapper;
    wrapper["signature"] = need(job, "signature");
    wrapper["carrier"] = json::array({"e"});
    wrapper["metric"] = json::array({json::array({0})});
    Signature sig = get_structure(wrapper).sig;
    FormulaPtr f = parse_formula(sig, need(job, "formula").get<std::string>());
    return json{{"class", to_string(classify(f))}};
}

json cmd_cr_defect(const json& job, const Options&) {
    Structure s = get_model(job);
    CRInstance inst;
    for (const auto& f : need(job, "formulas"))
        inst.formulas.push_back(parse_formula(s.sig, f.get<std::string>()));
    inst.x = need(job, "x").get<std::string>();
    if (job.contains("ys"))
        for (const auto& y : job.at("ys")) inst.ys.push_back(y.get<std::string>());
    for (const auto& w : need(job, "weights")) inst.weights.push_back(to_rational(w));
    return json{{"defect", from_rational(cr_defect(s, inst))}};
}

json cmd_validate(const json& job, const Options&) {
    auto violations = validate_structure(get_model(job));
    return json{{"valid", violations.empty()}, {"violations", violations}};
}

json cmd_type_distance(const json& job, const Options& opt) {
    Structure s = get_model(job);
    FormulaBasis basis = get_basis(job, s.sig);
    std::vector<int> a = get_tuple(s, need(job, "a"));
    std::vector<int> b = get_tuple(s, need(job, "b"));
    TypeDistanceBound r = type_distance_upper(s, a, b, basis, opt.budget, opt.cap);
    return json{{"upper", from_rational(r.upper)}, {"lower", from_rational(r.lower)}};
}

json cmd_cylinder(const json& job, const Options& opt) {
    PmpAlgebra alg = build_pmp_z(get_system(need(job, "system")));
    std::vector<int> tuple = get_tuple(alg.structure, need(job, "tuple"));
    return measure_to_json(pmp_qf_type_measure(alg, tuple, opt.horizon));
}

// --- output rendering ---

void render_pretty(const json& j, std::ostream& os, int indent) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_object() || (val.is_array() && !val.empty() && !val[0].is_primitive())) {
                os << pad << key << ":\n";
                render_pretty(val, os, indent + 2);
            } else {
                os << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& item : j) {
            if (item.is_primitive()) {
                os << pad << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
            } else if (item.is_array()) {
                os << pad;
                for (std::size_t i = 0; i < item.size(); ++i) {
                    if (i) os << "  ";
                    os << (item[i].is_string() ? item[i].get<std::string>() : item[i].dump());
                }
                os << "\n";
            } else {
                render_pretty(item, os, indent + 2);
                os << "\n";
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

int emit(const json& doc, const Options& opt) {
    std::ostringstream body;
    if (opt.pretty)
        render_pretty(doc, body, 0);
    else
        body << doc.dump(2) << "\n";
    if (opt.output.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file '" << opt.output << "'\n";
            return 2;
        }
        out << body.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic workbench for affine continuous logic over finite structures"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env_cap = std::getenv("AFFLOG_CAP")) {
        try {
            opt.cap = std::stoul(env_cap);
        } catch (...) {
            std::cerr << "invalid AFFLOG_CAP value '" << env_cap << "'\n";
            return 2;
        }
    }

    std::map<std::string, std::function<json(const json&, const Options&)>> handlers = {
        {"eval", cmd_eval},
        {"combine", cmd_combine},
        {"l1", cmd_l1},
        {"los-check", cmd_los_check},
        {"types", cmd_types},
        {"extreme", cmd_extreme},
        {"simplex-check", cmd_simplex_check},
        {"envelope", cmd_envelope},
        {"choquet-leq", cmd_choquet_leq},
        {"maximal-rep", cmd_maximal_rep},
        {"decompose", cmd_decompose},
        {"morleyize", cmd_morleyize},
        {"approx", cmd_approx},
        {"classify", cmd_classify},
        {"cr-defect", cmd_cr_defect},
        {"validate", cmd_validate},
        {"type-distance", cmd_type_distance},
        {"cylinder", cmd_cylinder},
    };

    const std::map<std::string, std::string> descriptions = {
        {"eval", "evaluate a formula in a structure at an assignment"},
        {"combine", "convex combination of a field of structures"},
        {"l1", "direct multiple of one structure over a probability space"},
        {"los-check", "compare a direct-integral value with the factor average"},
        {"types", "realized type cloud over a formula basis"},
        {"extreme", "hull vertices of a point cloud"},
        {"simplex-check", "affine independence test with a non-uniqueness witness"},
        {"envelope", "concave envelope value at a point"},
        {"choquet-leq", "Choquet order test with a dilation certificate"},
        {"maximal-rep", "vertex-supported representing measure of a point"},
        {"decompose", "ergodic decomposition of a finite system"},
        {"morleyize", "name formulas by fresh predicates"},
        {"approx", "best affine approximation of a formula over a basis"},
        {"classify", "syntactic formula class"},
        {"cr-defect", "exact defect of a convex-realization instance"},
        {"validate", "structural audit of a structure document"},
        {"type-distance", "bracket the type distance of two tuples"},
        {"cylinder", "cylinder-cell measure of a system tuple"},
    };

    std::string chosen;
    for (const auto& [name, fn] : handlers) {
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--input,-i", opt.inputs, "input JSON file (repeatable)");
        sub->add_option("--output,-o", opt.output, "output file (default stdout)");
        sub->add_flag("--pretty", opt.pretty, "human-readable output");
        sub->add_option("--cap", opt.cap, "carrier/tuple cap");
        sub->add_option("--budget", opt.budget, "self-combination budget (type-distance)");
        sub->add_option("--horizon", opt.horizon, "group window radius (cylinder)");
        sub->callback([&chosen, name = name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json job = json::object();
        for (const auto& path : opt.inputs) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw ParseError("cannot open input file '" + path + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            json doc;
            try {
                doc = json::parse(buf.str());
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad JSON in '") + path + "': " + e.what());
            }
            if (!doc.is_object()) throw ParseError("input file '" + path + "' is not an object");
            for (const auto& [key, val] : doc.items()) job[key] = val;
        }
        return emit(handlers.at(chosen)(job, opt), opt);
    } catch (const ParseError& e) {
        emit(json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}, opt);
        return 1;
    } catch (const DomainError& e) {
        emit(json{{"error", {{"kind", "domain"}, {"message", e.what()}}}}, opt);
        return 1;
    } catch (const json::exception& e) {
        emit(json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}, opt);
        return 1;
    } catch (const std::exception& e) {
        emit(json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}, opt);
        return 1;
    }
}
