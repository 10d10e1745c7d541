#include "qc/compactify.hpp"
#include "qc/desing.hpp"
#include "qc/globalcenter.hpp"
#include "qc/groebner.hpp"
#include "qc/json_io.hpp"
#include "qc/lyapunov.hpp"
#include "qc/parse.hpp"
#include "qc/portrait.hpp"
#include "qc/reference.hpp"
#include "qc/reproduce.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kComputation = 2, kBudget = 3 };

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json poly_out(const MultiPoly& p) {
    json j = poly_to_json(p);
    j["text"] = p.str();
    return j;
}

// numeric: parameters left free by the file and by --at are set to zero
PlanarSystem load(const std::string& path, const std::string& at, bool numeric = false) {
    PlanarSystem sys = load_system(path);
    if (!at.empty()) sys = sys.specialize(parse_assignments(at));
    if (numeric) {
        std::map<int, Rational> zero;
        for (int i : sys.parameters()) zero[i] = 0;
        sys = sys.specialize(zero);
    }
    return sys;
}

Rational parse_rational(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw usage_error("not a rational number: " + s);
    }
}

std::pair<Rational, Rational> parse_point(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw usage_error("point must be \"x,y\"");
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

// a JSON file holding a list of polynomials (strings or serialized objects), optionally under
// "generators"; anything else is read as a ';'-separated list
std::vector<MultiPoly> load_generators(const std::string& arg) {
    json j;
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw schema_error("$", std::string("malformed JSON: ") + e.what());
        }
        if (j.is_object()) {
            if (!j.contains("generators")) throw schema_error("$.generators", "missing");
            j = j["generators"];
        }
        if (!j.is_array()) throw schema_error("$", "expected a list of polynomials");
    } else {
        j = json::array();
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (item.find_first_not_of(' ') != std::string::npos) j.push_back(item);
    }
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            gens.push_back(j[i].is_string() ? parse(j[i].get<std::string>()) : poly_from_json(j[i]));
        } catch (const std::exception& e) {
            throw schema_error("$[" + std::to_string(i) + "]", e.what());
        }
    }
    return gens;
}

MonomialOrder make_order(const std::string& name, const std::string& vars) {
    std::vector<int> priority;
    std::stringstream ss(vars);
    std::string v;
    while (std::getline(ss, v, ',')) {
        int idx = VariableTable::index_of(v);
        if (idx < 0) throw usage_error("unknown variable " + v);
        priority.push_back(idx);
    }
    if (priority.empty()) priority = MonomialOrder::degrevlex().full_priority();
    if (name == "lex") return MonomialOrder::lex(priority);
    if (name == "degrevlex") return MonomialOrder::degrevlex(priority);
    throw usage_error("unknown order " + name);
}

json gb_json(const GroebnerBasis& gb) {
    json out = json::array();
    for (const auto& g : gb.generators) out.push_back(poly_out(g));
    return out;
}

struct Options {
    std::string system, at, params, mode = "theorem", chart = "U1", point = "0,0", seeds, out, target, op = "gb";
    std::string gens, with, name, poly, order = "degrevlex", vars, title, infinity_curve;
    int count = 3, depth = config().desing_depth, series_order = config().series_order;
    double tolerance = config().integration_tolerance, budget = 0;
    bool reduce = false, list = false, all = false, garbled = false, points = false, force = false;
};

json cmd_lyapunov(const Options& o) {
    auto res = compute_lyapunov(load(o.system, o.at), o.count, o.reduce);
    json list = json::array();
    for (const auto& e : res.sequence.entries) list.push_back({{"index", e.index}, {"polynomial", poly_out(e.value)}});
    return {{"count", o.count}, {"reduced", o.reduce}, {"time_reversed", res.time_reversed}, {"constants", list}};
}

json cmd_center_check(const Options& o) {
    auto p = FamilyParameters::parse(o.params);
    json j = to_json(center_check(p));
    j["parameters"] = p.str();
    return j;
}

json cmd_global_center(const Options& o) {
    if (o.mode != "theorem" && o.mode != "pipeline") throw usage_error("mode must be theorem or pipeline");
    auto p = FamilyParameters::parse(o.params);
    json j = to_json(global_center_check(p, o.mode == "theorem" ? GlobalMode::Theorem : GlobalMode::Pipeline));
    j["parameters"] = p.str();
    return j;
}

json cmd_compactify(const Options& o) {
    Chart c;
    try {
        c = chart_from_string(o.chart);
    } catch (const std::exception&) {
        throw usage_error("chart must be one of U1, U2, V1, V2");
    }
    auto sys = load(o.system, o.at);
    auto local = chart_system(sys, c);
    json j{{"chart", to_string(local.chart)}, {"P", poly_out(local.P)},  {"Q", poly_out(local.Q)},
           {"source_degree", local.source_degree}, {"log", local.log}};
    if (sys.parameters().empty()) {
        auto inf = infinite_equilibria(sys);
        json pts = json::array();
        for (const auto& p : inf.points)
            pts.push_back({{"chart", to_string(p.chart)}, {"x", p.x.approx()}, {"exact", p.x.exact}});
        j["infinite_equilibria"] = {{"line_at_infinity", inf.line_at_infinity}, {"points", pts}};
    }
    return j;
}

json cmd_classify(const Options& o) {
    auto sys = load(o.system, o.at, true);
    auto [x, y] = parse_point(o.point);
    ResolveOptions ro;
    ro.depth = o.depth;
    ro.series_order = o.series_order;
    ro.force_blowup = o.force;
    if (!o.infinity_curve.empty()) ro.infinity_curve = parse(o.infinity_curve);
    return to_json(resolve_local_portrait(sys, AlgNum(x), AlgNum(y), ro));
}

json cmd_ideal(const Options& o) {
    std::vector<MultiPoly> gens;
    if (!o.name.empty()) {
        auto ref = reference_ideal(o.name);
        gens = ref.generators;
    } else if (!o.gens.empty()) {
        gens = load_generators(o.gens);
    } else {
        throw usage_error("ideal needs --gens or --name");
    }
    Budget budget = config().groebner;
    if (o.budget > 0) budget.max_seconds = o.budget;
    MonomialOrder order = make_order(o.order, o.vars);
    json j{{"op", o.op}, {"order", order.str()}};
    auto need_poly = [&]() {
        if (o.poly.empty()) throw usage_error(o.op + " needs --poly");
        return parse(o.poly);
    };
    if (o.op == "gb") {
        auto r = buchberger(gens, order, budget);
        if (!r.ok()) throw budget_exhausted("Groebner basis budget exhausted");
        j["basis"] = gb_json(r.basis);
        j["unit"] = r.basis.is_unit();
    } else if (o.op == "member" || o.op == "normal-form") {
        MultiPoly p = need_poly();
        auto gb = groebner(gens, order, budget);
        MultiPoly nf = normal_form(p, gb);
        j["poly"] = p.str();
        j["normal_form"] = poly_out(nf);
        j["member"] = nf.is_zero();
    } else if (o.op == "radical") {
        MultiPoly p = need_poly();
        Budget rb = config().radical;
        if (o.budget > 0) rb.max_seconds = o.budget;
        auto r = is_in_radical(p, gens, rb);
        if (r.status != GbStatus::Ok) throw budget_exhausted("radical membership budget exhausted");
        j["poly"] = p.str();
        j["member"] = r.member;
    } else if (o.op == "intersect") {
        if (o.with.empty()) throw usage_error("intersect needs --with");
        auto r = intersect(gens, load_generators(o.with), budget);
        if (r.status != GbStatus::Ok) throw budget_exhausted("intersection budget exhausted");
        json g = json::array();
        for (const auto& p : r.generators) g.push_back(poly_out(p));
        j["generators"] = g;
    } else {
        throw usage_error("unknown ideal operation " + o.op);
    }
    return j;
}

json cmd_portrait(const Options& o) {
    auto sys = load(o.system, o.at, true);
    RenderSpec spec;
    try {
        spec.seeds = parse_seeds(o.seeds);
    } catch (const std::exception& e) {
        throw usage_error(e.what());
    }
    spec.integration.tolerance = o.tolerance;
    spec.title = o.title.empty() ? (o.at.empty() ? o.system : o.at) : o.title;
    std::vector<OrbitTrace> traces;
    std::string svg = render_disc(sys, spec, &traces);
    json orbits = json::array();
    for (std::size_t i = 0; i < traces.size(); ++i) {
        json t = to_json(traces[i], o.points);
        t["seed"] = {spec.seeds[i].first, spec.seeds[i].second};
        orbits.push_back(t);
    }
    json j{{"orbits", orbits}, {"svg_bytes", svg.size()}};
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + o.out);
        f << svg;
        j["svg"] = o.out;
    }
    return j;
}

// returns the exit code
int cmd_reproduce(const Options& o, json& out) {
    if (o.list) {
        out = json::array();
        for (const auto& t : reproduce_targets()) out.push_back({{"target", t.name}, {"description", t.description}});
        return kOk;
    }
    ReproduceOptions ro;
    ro.include_garbled = o.garbled;
    std::vector<std::string> names;
    if (o.all) {
        for (const auto& t : reproduce_targets()) names.push_back(t.name);
    } else if (!o.target.empty()) {
        names.push_back(o.target);
    } else {
        throw usage_error("reproduce needs --target, --all or --list");
    }
    json results = json::array();
    bool exhausted = false;
    for (const auto& n : names) {
        json r;
        try {
            r = run_target(n, ro);
        } catch (const std::out_of_range&) {
            throw usage_error("unknown target " + n + " (see reproduce --list)");
        }
        exhausted = exhausted || r.value("budget_exhausted", false);
        results.push_back(r);
    }
    out = names.size() == 1 && !o.all ? results[0] : json{{"results", results}};
    return exhausted ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centers, Lyapunov constants and global phase portraits of planar polynomial systems"};
    app.require_subcommand(1);
    Options o;

    auto* ly = app.add_subcommand("lyapunov", "Lyapunov constants L1..LN of a system with linear part (y, -x)");
    ly->add_option("--system", o.system, "system description (JSON)")->required();
    ly->add_option("--count,-N", o.count, "number of constants")->check(CLI::Range(1, 40));
    ly->add_option("--at", o.at, "parameter values, e.g. a0=1,a3=-1/2");
    ly->add_flag("--reduce", o.reduce, "reduce each odd constant modulo the earlier ones");

    auto* cc = app.add_subcommand("center-check", "center / focus verdict for the quintic family");
    cc->add_option("--params", o.params, "a0..a5 values; unlisted ones are zero");

    auto* gc = app.add_subcommand("global-center", "global center verdict for the quintic family");
    gc->add_option("--params", o.params, "a0..a5 values; unlisted ones are zero");
    gc->add_option("--mode", o.mode, "theorem or pipeline");

    auto* cp = app.add_subcommand("compactify", "Poincare compactification in one local chart");
    cp->add_option("--system", o.system, "system description (JSON)")->required();
    cp->add_option("--chart", o.chart, "U1, U2, V1 or V2");
    cp->add_option("--at", o.at, "parameter values");

    auto* cl = app.add_subcommand("classify", "local phase portrait of an equilibrium, with the blow-up trace");
    cl->add_option("--system", o.system, "system description (JSON)")->required();
    cl->add_option("--point", o.point, "rational coordinates \"x,y\"");
    cl->add_option("--at", o.at, "parameter values");
    cl->add_option("--depth", o.depth, "blow-up recursion depth")->check(CLI::Range(0, 20));
    cl->add_option("--series-order", o.series_order, "center manifold series order")->check(CLI::Range(2, 60));
    cl->add_option("--infinity-curve", o.infinity_curve, "invariant curve counted as the circle at infinity");
    cl->add_flag("--force-blowup", o.force, "blow up even elementary points");

    auto* id = app.add_subcommand("ideal", "Groebner basis computations over Q");
    id->add_option("op", o.op, "gb, member, normal-form, radical or intersect");
    id->add_option("--gens", o.gens, "JSON file with generators, or a ';'-separated list");
    id->add_option("--name", o.name, "a stored ideal: T1, T2 or T3");
    id->add_option("--with", o.with, "second ideal for intersect");
    id->add_option("--poly", o.poly, "polynomial for member, normal-form and radical");
    id->add_option("--order", o.order, "degrevlex or lex");
    id->add_option("--vars", o.vars, "variable priority, highest first, e.g. y,x");
    id->add_option("--budget", o.budget, "wall-clock budget in seconds");

    auto* pt = app.add_subcommand("portrait", "integrate orbits and render the Poincare disc as SVG");
    pt->add_option("--system", o.system, "system description (JSON)")->required();
    pt->add_option("--at", o.at, "parameter values");
    pt->add_option("--seeds", o.seeds, "seed points \"x,y;x,y\"")->required();
    pt->add_option("--out", o.out, "SVG output file");
    pt->add_option("--tolerance", o.tolerance, "integration tolerance")->check(CLI::PositiveNumber);
    pt->add_option("--title", o.title, "SVG title");
    pt->add_flag("--points", o.points, "include orbit samples in the JSON output");

    auto* rp = app.add_subcommand("reproduce", "rerun a reference computation and compare with the stored result");
    rp->add_option("--target", o.target, "target name");
    rp->add_flag("--list", o.list, "list the targets");
    rp->add_flag("--all", o.all, "run every target");
    rp->add_flag("--include-garbled", o.garbled, "also use the ambiguous T3 generator list");

    if (argc < 2) {
        std::cerr << app.help();
        return kUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return kUsage;
    }

    json out;
    int code = kOk;
    try {
        if (*ly) out = cmd_lyapunov(o);
        else if (*cc) out = cmd_center_check(o);
        else if (*gc) out = cmd_global_center(o);
        else if (*cp) out = cmd_compactify(o);
        else if (*cl) out = cmd_classify(o);
        else if (*id) out = cmd_ideal(o);
        else if (*pt) out = cmd_portrait(o);
        else code = cmd_reproduce(o, out);
    } catch (const usage_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const budget_exhausted& e) {
        out = {{"error", "budget-exhausted"}, {"message", e.what()}};
        code = kBudget;
    } catch (const schema_error& e) {
        out = {{"error", "schema"}, {"path", e.path()}, {"message", e.what()}};
        code = kComputation;
    } catch (const std::exception& e) {
        out = {{"error", "computation"}, {"message", e.what()}};
        code = kComputation;
    }
    std::cout << out.dump(2) << "\n";
    return code;
}
