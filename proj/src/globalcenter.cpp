#include "qc/globalcenter.hpp"

#include "qc/groebner.hpp"
#include "qc/portrait.hpp"
#include "qc/upoly.hpp"

#include <cmath>
#include <sstream>

namespace qc {

FamilyParameters FamilyParameters::from_assignments(const std::map<int, Rational>& values) {
    FamilyParameters p;
    for (const auto& [v, r] : values) {
        if (v < var::a0 || v > var::a5) throw std::invalid_argument("only a0..a5 can be assigned");
        p.a[v - var::a0] = r;
    }
    return p;
}

FamilyParameters FamilyParameters::parse(const std::string& text) {
    return from_assignments(parse_assignments(text));
}

std::map<int, Rational> FamilyParameters::assignments() const {
    std::map<int, Rational> m;
    for (int i = 0; i < 6; ++i) m[var::a(i)] = a[i];
    return m;
}

PlanarSystem FamilyParameters::system() const { return quintic_family().specialize(assignments()); }

std::string FamilyParameters::str() const {
    std::string s;
    for (int i = 0; i < 6; ++i) s += (i ? "," : "") + std::string("a") + std::to_string(i) + "=" + a[i].get_str();
    return s;
}

namespace {

// coefficients in y of p(x0, y)
std::vector<AlgNum> y_coefficients(const MultiPoly& p, const AlgNum& x0) {
    std::vector<AlgNum> c;
    for (const auto& [m, r] : p.terms()) {
        std::size_t j = m.e[var::y];
        if (c.size() <= j) c.resize(j + 1, AlgNum(0));
        c[j] = c[j] + AlgNum(r) * x0.pow(static_cast<unsigned>(m.e[var::x]));
    }
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    return c;
}

AlgNum from_root(const RealRoot& r) {
    return r.exact ? AlgNum(r.value) : AlgNum::generator(AlgebraicReal::from_root(r));
}

bool zero_dimensional(const GroebnerBasis& gb) {
    bool px = false, py = false;
    for (std::size_t i = 0; i < gb.generators.size(); ++i) {
        Mono m = gb.leading_monomial(i).leading().first;
        if (m.e[var::y] == 0 && m.e[var::x] > 0) px = true;
        if (m.e[var::x] == 0 && m.e[var::y] > 0) py = true;
    }
    return px && py;
}

double eval_d(const MultiPoly& p, double x, double y) {
    double s = 0;
    for (const auto& [m, c] : p.terms()) s += c.get_d() * std::pow(x, m.e[var::x]) * std::pow(y, m.e[var::y]);
    return s;
}

}  // namespace

FiniteEquilibria finite_equilibria(const PlanarSystem& sys) {
    if (!sys.parameters().empty()) throw std::invalid_argument("finite_equilibria needs numeric parameters");
    FiniteEquilibria out;
    if (has_quintic_shape(sys)) {
        // x' = y forces y = 0
        out.method = "family";
        MultiPoly q0 = substitute(sys.Q, {{var::y, MultiPoly(0)}});
        if (q0.is_zero()) {
            out.positive_dimensional = true;
            return out;
        }
        for (const auto& r : real_roots(q0)) out.points.push_back({from_root(r), AlgNum(0), true});
        return out;
    }
    out.method = "lex-groebner";
    auto gb = groebner({sys.P, sys.Q}, MonomialOrder::lex({var::y, var::x}));
    if (gb.is_unit()) return out;
    if (!zero_dimensional(gb)) {
        out.positive_dimensional = true;
        return out;
    }
    MultiPoly elim;
    for (const auto& g : gb.generators)
        if (!g.uses(var::y)) elim = g;
    std::optional<std::vector<RealRoot>> y_roots;
    for (const auto& r : real_roots(elim)) {
        AlgNum x0 = from_root(r);
        std::vector<AlgNum> best;
        for (const auto& g : gb.generators) {
            if (!g.uses(var::y)) continue;
            auto c = y_coefficients(g, x0);
            if (!c.empty() && (best.empty() || c.size() < best.size())) best = c;
        }
        if (best.size() == 2) {
            out.points.push_back({x0, -best[0] / best[1], true});
            continue;
        }
        bool rational = true;
        for (const auto& c : best) rational = rational && c.is_rational();
        if (rational && best.size() > 2) {
            std::vector<Rational> rc;
            for (const auto& c : best) rc.push_back(c.rational_value());
            for (const auto& yr : real_roots(UPoly(rc))) out.points.push_back({x0, from_root(yr), true});
            continue;
        }
        // match against the y-eliminant numerically
        if (!y_roots) {
            auto gy = groebner({sys.P, sys.Q}, MonomialOrder::lex({var::x, var::y}));
            MultiPoly ey;
            for (const auto& g : gy.generators)
                if (!g.uses(var::x)) ey = g;
            y_roots = real_roots(ey);
        }
        double xd = x0.approx();
        for (const auto& yr : *y_roots) {
            double yd = yr.approx(), worst = 0;
            for (const auto& g : gb.generators) {
                double scale = 0;
                for (const auto& [m, c] : g.terms())
                    scale += std::fabs(c.get_d()) * std::pow(std::fabs(xd), m.e[var::x]) *
                             std::pow(std::fabs(yd), m.e[var::y]);
                worst = std::max(worst, std::fabs(eval_d(g, xd, yd)) / std::max(scale, 1e-300));
            }
            if (worst < 1e-9) out.points.push_back({x0, from_root(yr), false});
        }
    }
    return out;
}

std::string to_string(CenterVerdict v) {
    switch (v) {
        case CenterVerdict::CenterUniqueEquilibrium: return "center-with-unique-equilibrium";
        case CenterVerdict::Focus: return "focus";
        case CenterVerdict::CenterExtraEquilibria: return "center-but-extra-equilibria";
    }
    return "?";
}

CenterCheck center_check(const FamilyParameters& p) {
    CenterCheck c;
    PlanarSystem sys = p.system();
    c.center_predicate = p.a[0] == 0 && p.a[2] == 0 && p.a[4] == 0;
    c.reversibility = reversibility_test(sys);
    c.equilibria = finite_equilibria(sys);
    if (c.center_predicate) {
        c.cross_validated = c.reversibility == Reversibility::XAxis;
        bool unique = !c.equilibria.positive_dimensional && c.equilibria.points.size() == 1;
        c.verdict = unique ? CenterVerdict::CenterUniqueEquilibrium : CenterVerdict::CenterExtraEquilibria;
    } else {
        c.weak_focus = weak_focus_order(sys, 15);
        c.cross_validated = !c.weak_focus->center_candidate;
        c.verdict = CenterVerdict::Focus;
    }
    return c;
}

std::string infinity_case(const FamilyParameters& p) {
    if (p.a[1] != 0 || p.a[5] > 0) return "";
    int s = sgn(p.a[3]);
    bool a_zero = p.a[5] == 0;
    if (s > 0) return a_zero ? "c2" : "c1";
    if (s < 0) return a_zero ? "c4" : "c3";
    return a_zero ? "c6" : "c5";
}

std::string to_string(GlobalVerdict v) {
    switch (v) {
        case GlobalVerdict::True: return "true";
        case GlobalVerdict::False: return "false";
        case GlobalVerdict::Undecided: return "undecided-by-pipeline";
    }
    return "?";
}

bool global_center_predicate(const FamilyParameters& p) {
    return p.a[0] == 0 && p.a[1] == 0 && p.a[2] == 0 && p.a[4] == 0 && p.a[3] <= 0 && p.a[5] <= 0;
}

namespace {

nlohmann::json escape_evidence(const PlanarSystem& sys) {
    IntegrationSpec spec;
    spec.tolerance = 1e-10;
    spec.max_steps = 1000000;
    spec.max_revolutions = 20;
    nlohmann::json tried = nlohmann::json::array();
    for (Point2 seed : {Point2{1, 0}, Point2{3, 0}, Point2{0, 3}, Point2{3, 3}, Point2{0, 10}}) {
        OrbitTrace t = integrate(sys, seed, spec);
        nlohmann::json j = to_json(t);
        j["seed"] = {seed.first, seed.second};
        j.erase("crossings");
        if (t.verdict == OrbitVerdict::Escaped) return j;
        tried.push_back(j);
    }
    return {{"verdict", "none-escaped"}, {"tried", tried}};
}

}  // namespace

GlobalCenterResult global_center_check(const FamilyParameters& p, GlobalMode mode) {
    GlobalCenterResult res;
    res.mode = mode;
    res.infinity_case = infinity_case(p);
    if (mode == GlobalMode::Theorem) {
        bool ok = global_center_predicate(p);
        res.verdict = ok ? GlobalVerdict::True : GlobalVerdict::False;
        res.reason = ok ? "a0=a1=a2=a4=0, a3<=0, a5<=0" : "closed-form conditions violated";
        return res;
    }
    res.center = center_check(p);
    if (res.center->verdict != CenterVerdict::CenterUniqueEquilibrium) {
        res.verdict = GlobalVerdict::False;
        res.reason = "origin is not a center with a unique finite equilibrium: " + to_string(res.center->verdict);
        return res;
    }
    PlanarSystem sys = p.system();
    auto inf = infinite_equilibria(sys);
    res.line_at_infinity = inf.line_at_infinity;
    if (inf.line_at_infinity) {
        res.verdict = GlobalVerdict::False;
        res.reason = "line of equilibria at infinity";
        return res;
    }
    // antipodal points carry the same field up to the sign (-1)^(n-1), so the U charts suffice
    bool failed = false, undecided = false;
    std::string why;
    for (const auto& pt : inf.points) {
        InfinitePointReport ip;
        ip.chart = pt.chart;
        ip.x = from_root(pt.x);
        PlanarSystem local = chart_system(sys, pt.chart).system();
        ResolveOptions opt;
        opt.infinity_curve = y_();
        std::string where = to_string(pt.chart) + " (" + ip.x.str() + ", 0)";
        try {
            ip.report = resolve_local_portrait(local, ip.x, AlgNum(0), opt);
        } catch (const desing_error& e) {
            ip.report.kind = EquilibriumKind::Unresolved;
            ip.report.reason = e.what();
        }
        const auto& s = ip.report.sectors;
        if (!s || ip.report.kind == EquilibriumKind::Unresolved) {
            undecided = true;
            why += where + ": unresolved (" + ip.report.reason + "); ";
        } else if (s->two_hyperbolic_on_infinity()) {
            ip.two_hyperbolic = true;
        } else if (s->count(SectorType::Parabolic) + s->count(SectorType::Elliptic) > 0) {
            failed = true;
            why += where + ": orbits reach infinity through " + s->str() + "; ";
        } else if (!s->complete) {
            undecided = true;
            why += where + ": incomplete sector sequence; ";
        } else {
            failed = true;
            why += where + ": sector sequence " + s->str() + " is not two hyperbolic sectors on infinity; ";
        }
        res.infinite_points.push_back(std::move(ip));
    }
    if (failed) {
        res.verdict = GlobalVerdict::False;
        res.escape = escape_evidence(sys);
    } else if (undecided) {
        res.verdict = GlobalVerdict::Undecided;
    } else {
        res.verdict = GlobalVerdict::True;
        why = "center with unique finite equilibrium; every infinite equilibrium has two hyperbolic sectors "
              "with separatrices on the infinite circle";
    }
    if (!why.empty() && why.back() == ' ') why.resize(why.size() - 2);
    res.reason = why;
    return res;
}

nlohmann::json to_json(const FinitePoint& p) {
    return {{"x", p.x.approx()}, {"y", p.y.approx()}, {"x_exact", p.x.str()}, {"y_exact", p.y.str()},
            {"exact", p.exact}};
}

nlohmann::json to_json(const FiniteEquilibria& e) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : e.points) pts.push_back(to_json(p));
    return {{"positive_dimensional", e.positive_dimensional}, {"method", e.method}, {"points", pts}};
}

nlohmann::json to_json(const CenterCheck& c) {
    nlohmann::json j{{"verdict", to_string(c.verdict)},
                     {"center_predicate", c.center_predicate},
                     {"reversibility", to_string(c.reversibility)},
                     {"finite_equilibria", to_json(c.equilibria)},
                     {"cross_validated", c.cross_validated}};
    if (c.weak_focus)
        j["weak_focus"] = {{"center_candidate", c.weak_focus->center_candidate},
                           {"order", c.weak_focus->order},
                           {"value", c.weak_focus->value.get_str()}};
    return j;
}

nlohmann::json to_json(const GlobalCenterResult& r) {
    nlohmann::json j{{"verdict", to_string(r.verdict)},
                     {"mode", r.mode == GlobalMode::Theorem ? "theorem" : "pipeline"},
                     {"reason", r.reason}};
    if (!r.infinity_case.empty()) j["case"] = r.infinity_case;
    if (r.center) j["center"] = to_json(*r.center);
    if (r.mode == GlobalMode::Pipeline && r.center && r.center->verdict == CenterVerdict::CenterUniqueEquilibrium) {
        j["line_at_infinity"] = r.line_at_infinity;
        j["infinite_points"] = nlohmann::json::array();
        for (const auto& p : r.infinite_points) {
            nlohmann::json e = to_json(p.report);
            e["chart"] = to_string(p.chart);
            e["x"] = p.x.approx();
            e["two_hyperbolic_on_infinity"] = p.two_hyperbolic;
            j["infinite_points"].push_back(e);
        }
    }
    if (!r.escape.is_null()) j["escape"] = r.escape;
    return j;
}

}  // namespace qc
