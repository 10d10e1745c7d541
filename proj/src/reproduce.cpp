#include "qc/reproduce.hpp"

#include "qc/compactify.hpp"
#include "qc/desing.hpp"
#include "qc/globalcenter.hpp"
#include "qc/groebner.hpp"
#include "qc/lyapunov.hpp"
#include "qc/parse.hpp"
#include "qc/portrait.hpp"
#include "qc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qc {

namespace {

using nlohmann::json;

std::map<int, Rational> center_params(const Rational& a1, const Rational& a3, const Rational& a5) {
    return {{var::a1, a1}, {var::a3, a3}, {var::a5, a5}};
}

PlanarSystem chart_of(const std::map<int, Rational>& v, Chart c) {
    return chart_system(center_system().specialize(v), c).system();
}

json system_json(const PlanarSystem& s) { return {{"P", s.P.str()}, {"Q", s.Q.str()}}; }

std::map<std::string, PlanarSystem> computed_chains() {
    std::map<std::string, PlanarSystem> out;
    for (auto& [name, s] : replay_chains(reference_chains())) out[name] = s;
    return out;
}

const ChainEntry& chain_entry(const std::vector<ChainEntry>& entries, const std::string& name) {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("no chain entry " + name);
}

bool all_zero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

json parse_gamma(const ReproduceOptions&) {
    MultiPoly p = parse("y^5");
    Mono m;
    m.e[var::y] = 5;
    bool single = p.size() == 1 && p.leading().first == m && p.leading().second == 1;
    bool product = y_() * y_().pow(4) == p;
    return {{"input", "y^5"}, {"parsed", p.str()}, {"single_monomial", single}, {"product_y_y4", product},
            {"pass", single && product}};
}

json parse_t2(const ReproduceOptions&) {
    MultiPoly p = parse("18*a3^2 + 49*a2^2");
    auto t2 = reference_ideal("T2");
    bool eq = !t2.generators.empty() && t2.generators.front() == p;
    return {{"input", "18*a3^2 + 49*a2^2"}, {"parsed", p.str()}, {"first_T2_generator", eq}, {"pass", eq}};
}

json u2_blowup(const ReproduceOptions&) {
    auto u2 = chart_system(center_system(), Chart::U2);
    // (x, y) -> (x, x y) by hand, then the x^2 rescale
    MultiPoly P1 = substitute(u2.P, {{var::y, x_() * y_()}});
    Mono xm;
    xm.e[var::x] = 1;
    MultiPoly Q1 = (substitute(u2.Q, {{var::y, x_() * y_()}}) - y_() * P1).div_mono(xm);
    Mono x2;
    x2.e[var::x] = 2;
    PlanarSystem s1{P1, Q1}, s2{P1.div_mono(x2), Q1.div_mono(x2)};
    auto entries = reference_chains();
    bool eq1 = s1 == chain_entry(entries, "U2_1").expected();
    bool eq2 = s2 == chain_entry(entries, "U2_2").expected();
    bool step = transform(u2.system(), vertical_blowup()) == s1;
    return {{"U2", system_json(u2.system())}, {"U2_1", system_json(s1)},   {"U2_2", system_json(s2)},
            {"U2_1_matches", eq1},          {"U2_2_matches", eq2},         {"blowup_step_agrees", step},
            {"pass", eq1 && eq2 && step}};
}

json u2_components(const ReproduceOptions&) {
    auto u2 = chart_system(center_system(), Chart::U2);
    MultiPoly p2 = homogeneous_component(u2.P, 2), q2 = homogeneous_component(u2.Q, 2);
    bool ok = p2 == parse("-a1*x^2") && q2 == parse("-a1*x*y");
    return {{"P2", p2.str()}, {"Q2", q2.str()}, {"pass", ok}};
}

json lemma_roots(const ReproduceOptions&) {
    auto roots = real_roots(parse("x*(-x^4 - 1)"));
    bool ok = roots.size() == 1 && roots[0].exact && roots[0].value == 0;
    json r = json::array();
    for (const auto& x : roots) r.push_back(x.approx());
    return {{"polynomial", "x*(-x^4 - 1)"}, {"roots", r}, {"pass", ok}};
}

json l3(const ReproduceOptions&) {
    auto res = compute_lyapunov(quintic_family(), 3, true);
    const auto& L1 = res.sequence.at(1);
    const auto& L3 = res.sequence.at(3);
    MultiPoly fixture = reference_constant(3);
    bool eq = L3 == fixture && L3 == parse("-1/16*(5*a0 + a4 + a2)");
    return {{"L1", L1.str()},       {"L3", L3.str()}, {"fixture", fixture.str()}, {"L1_zero", L1.is_zero()},
            {"equal_to_fixture", eq}, {"pass", L1.is_zero() && eq}};
}

json higher_constants(const ReproduceOptions&) {
    auto seq = lyapunov_constants(quintic_family(), 9);
    json items = json::array();
    bool ok = true;
    for (int j : {5, 7, 9}) {
        auto m = match_modulo(seq.at(j), reference_constant(j), seq.odd_entries(j - 2));
        json item{{"index", j}, {"matches", m.matches}, {"factor", m.factor.get_str()}};
        if (reference_constant_has_correction(j)) {
            auto raw = match_modulo(seq.at(j), reference_constant(j, false), seq.odd_entries(j - 2));
            item["display_matches"] = raw.matches;
            item["display_nf_difference"] = (raw.reference_nf - raw.computed_nf).str();
        }
        ok = ok && m.matches && m.factor > 0;
        items.push_back(item);
    }
    return {{"constants", items}, {"pass", ok}};
}

json single_constant(int j) {
    auto seq = lyapunov_constants(quintic_family(), j);
    auto m = match_modulo(seq.at(j), reference_constant(j), seq.odd_entries(j - 2));
    json r{{"index", j}, {"matches", m.matches}, {"factor", m.factor.get_str()}, {"normal_form", m.computed_nf.str()}};
    if (reference_constant_has_correction(j)) {
        auto raw = match_modulo(seq.at(j), reference_constant(j, false), seq.odd_entries(j - 2));
        r["display_matches"] = raw.matches;
        r["display_nf_difference"] = (raw.reference_nf - raw.computed_nf).str();
    }
    r["pass"] = m.matches && m.factor > 0;
    return r;
}

json bautin(const ReproduceOptions&) {
    auto rep = bautin_inclusion_check(lyapunov_constants(quintic_family(), 9));
    json items = json::array();
    for (const auto& it : rep.items) items.push_back({{"index", it.index}, {"reduces_to_zero", it.reduces_to_zero}});
    return {{"even_constants", items}, {"pass", rep.ok() && rep.items.size() == 4}};
}

json reversibility(const ReproduceOptions&) {
    auto r = reversibility_test(center_system());
    auto seq = lyapunov_constants(center_system(), 9);
    bool zero = true;
    for (const auto& e : seq.entries) zero = zero && e.value.is_zero();
    return {{"system", system_json(center_system())},
            {"reversibility", to_string(r)},
            {"constants_vanish_to_9", zero},
            {"pass", r == Reversibility::XAxis && zero}};
}

json weak_focus(const ReproduceOptions&) {
    auto f = weak_focus_order(FamilyParameters::parse("a0=1").system(), 9);
    auto c = weak_focus_order(FamilyParameters::parse("a3=-1").system(), 9);
    bool ok = !f.center_candidate && f.order == 3 && f.value == Rational(-5, 16) && c.center_candidate;
    return {{"a0=1", {{"order", f.order}, {"value", f.value.get_str()}}},
            {"a3=-1", {{"center_candidate", c.center_candidate}}},
            {"pass", ok}};
}

json t1_basis(const ReproduceOptions&) {
    auto gb = groebner(reference_ideal("T1").generators);
    std::vector<std::string> g;
    for (const auto& p : gb.generators) g.push_back(p.str());
    std::vector<std::string> sorted = g, want{"a0", "a2", "a4"};
    std::sort(sorted.begin(), sorted.end());
    return {{"basis", g}, {"pass", sorted == want}};
}

json l17(const ReproduceOptions&) {
    auto res = compute_lyapunov(quintic_family(), 17, true);
    auto raw = lyapunov_constants(quintic_family(), 17);
    auto gb = buchberger(raw.odd_entries(15));
    if (!gb.ok()) return {{"budget_exhausted", true}, {"pass", false}};
    MultiPoly nf = normal_form(raw.at(17), gb.basis);
    return {{"raw_terms", raw.at(17).size()},
            {"basis_size", gb.basis.generators.size()},
            {"normal_form", nf.str()},
            {"reduced_entry_zero", res.sequence.at(17).is_zero()},
            {"pass", nf.is_zero() && res.sequence.at(17).is_zero()}};
}

json radical_t(const ReproduceOptions& opt) {
    auto raw = lyapunov_constants(quintic_family(), 15);
    auto R = raw.odd_entries(15);
    auto t1 = reference_ideal("T1").generators;
    auto t2 = reference_ideal("T2").generators;
    bool exhausted = false;
    auto meet = intersect(t1, t2);
    exhausted = exhausted || meet.status != GbStatus::Ok;
    std::vector<MultiPoly> T = meet.generators;
    std::vector<std::string> parts{"T1", "T2"};
    if (opt.include_garbled) {
        auto m3 = intersect(T, reference_ideal("T3").generators);
        exhausted = exhausted || m3.status != GbStatus::Ok;
        T = m3.generators;
        parts.push_back("T3");
    }
    json forward = json::array(), backward = json::array();
    bool fwd = true, bwd = true;
    for (int k = 1; k <= 7; ++k) {
        auto r = is_in_radical(raw.at(2 * k + 1), T);
        exhausted = exhausted || r.status != GbStatus::Ok;
        forward.push_back({{"L", 2 * k + 1}, {"in_radical_T", r.member}});
        fwd = fwd && r.member;
    }
    auto check_back = [&](const std::vector<MultiPoly>& gens, const std::string& ideal) {
        for (const auto& p : gens) {
            auto r = is_in_radical(p, R);
            exhausted = exhausted || r.status != GbStatus::Ok;
            backward.push_back({{"ideal", ideal}, {"generator", p.str()}, {"in_radical_R", r.member}});
            bwd = bwd && r.member;
        }
    };
    check_back(t1, "T1");
    check_back(T, "T");
    json out{{"T_components", parts},
             {"T_generators", json::array()},
             {"L_in_radical_T", forward},
             {"T_in_radical_R", backward},
             {"forward", fwd},
             {"backward", bwd},
             {"pass", fwd && bwd && !exhausted}};
    for (const auto& p : T) out["T_generators"].push_back(p.str());
    if (!opt.include_garbled) out["note"] = "T3 is quarantined; rerun with --include-garbled to intersect it in";
    if (exhausted) out["budget_exhausted"] = true;
    return out;
}

json t1_eval(const ReproduceOptions&) {
    std::map<int, Rational> pt{{var::a0, 0}, {var::a1, 0}, {var::a2, 0}, {var::a3, -1}, {var::a4, 0}, {var::a5, -1}};
    auto v = evaluate_ideal(reference_ideal("T1").generators, pt);
    json vals = json::array();
    for (const auto& r : v) vals.push_back(r.get_str());
    return {{"point", "a3=-1,a5=-1"}, {"values", vals}, {"pass", all_zero(v)}};
}

json charts(const ReproduceOptions&) {
    auto entries = reference_chains();
    auto u1 = chart_system(center_system(), Chart::U1), u2 = chart_system(center_system(), Chart::U2);
    bool e1 = u1.system() == chain_entry(entries, "U1").expected();
    bool e2 = u2.system() == chain_entry(entries, "U2").expected();
    return {{"U1", system_json(u1.system())}, {"U2", system_json(u2.system())}, {"U1_matches", e1},
            {"U2_matches", e2},             {"pass", e1 && e2}};
}

json c3_infinity(const ReproduceOptions&) {
    json samples = json::array();
    bool ok = true;
    for (auto [a3, a5] : {std::pair{Rational(-1), Rational(-1)}, std::pair{Rational(-2), Rational(-1, 4)}}) {
        auto inf = infinite_equilibria(center_system().specialize(center_params(0, a3, a5)));
        int u1 = 0, u2 = 0;
        for (const auto& p : inf.points) (p.chart == Chart::U1 ? u1 : u2)++;
        samples.push_back({{"a3", a3.get_str()}, {"a5", a5.get_str()}, {"U1_points", u1}, {"U2_points", u2}});
        ok = ok && u1 == 0 && u2 == 1 && !inf.line_at_infinity;
    }
    return {{"samples", samples}, {"pass", ok}};
}

json characteristic_forms(const ReproduceOptions&) {
    auto u2 = characteristic_form(chart_system(center_system(), Chart::U2).system());
    // a3 stays symbolic
    std::map<int, Rational> v{{var::a1, Rational(0)}, {var::a5, Rational(0)}};
    auto c2 = characteristic_form(chart_of(v, Chart::U2));
    auto c4 = characteristic_form(chart_of(v, Chart::U1));
    bool ok = u2.k == 2 && u2.all_directions && c2.k == 4 && c2.gamma == parse("y^5") && c4.k == 2 &&
              c4.gamma == parse("a3*x^2*y");
    return {{"U2", {{"k", u2.k}, {"all_directions", u2.all_directions}}},
            {"c2", {{"k", c2.k}, {"gamma", c2.gamma.str()}}},
            {"c4",
             {{"k", c4.k},
              {"gamma", c4.gamma.str()},
              {"note", "the displayed -y(y^4 - a3 x^2) is a weighted form; the homogeneous form is a3 x^2 y"}}},
            {"pass", ok}};
}

json chains(const ReproduceOptions&) {
    auto entries = reference_chains();
    auto computed = replay_chains(entries);
    json items = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        json item{{"name", e.name}};
        if (e.displayed) {
            bool m = computed[i].second == e.expected();
            item["matches"] = m;
            if (e.corrected) {
                item["display_erratum"] = true;
                item["note"] = e.note;
            }
            ok = ok && m;
        }
        items.push_back(item);
    }
    // c6_5: -x(1 - 5y + f), y(1 - y)(3 - 6y + g)
    const auto& c65 = computed.back().second;
    Mono xm;
    xm.e[var::x] = 1;
    MultiPoly f = -1 * c65.P.div_mono(xm) - parse("1 - 5*y");
    auto qr = divide(c65.Q, {parse("y*(1 - y)")}, MonomialOrder::degrevlex());
    MultiPoly g = qr.quotients[0] - parse("3 - 6*y");
    bool deg = qr.remainder.is_zero() && f.xy_degree() == 21 && g.xy_degree() == 20;
    return {{"entries", items}, {"c6_5", {{"deg_f", f.xy_degree()}, {"deg_g", g.xy_degree()}}}, {"pass", ok && deg}};
}

json classifications(const ReproduceOptions&) {
    auto c = computed_chains();
    json out = json::object();
    auto c22 = classify(c["c2_2"].specialize({{var::a3, Rational(1)}}), 0, 0);
    auto c32 = classify(c["c3_2"].specialize({{var::a3, Rational(-1)}, {var::a5, Rational(-1)}}), 0, 0);
    auto c42 = classify(c["c4_2"].specialize({{var::a3, Rational(-1)}}), 0, 0);
    auto c65 = c["c6_5"].specialize({{var::a5, Rational(-1)}});
    auto c65a = classify(c65, 0, 0), c65b = classify(c65, 0, 1);
    auto c1 = classify(chart_of(center_params(0, 4, -4), Chart::U1), 1, 0);
    auto brief = [](const EquilibriumReport& r) {
        return json{{"kind", to_string(r.kind)}, {"stability", to_string(r.stability)}};
    };
    out["c2_2_origin"] = brief(c22);
    out["c3_2_origin"] = brief(c32);
    out["c4_2_origin"] = brief(c42);
    out["c6_5_origin"] = brief(c65a);
    out["c6_5_(0,1)"] = brief(c65b);
    out["c1_point"] = brief(c1);
    out["c1_point"]["nonzero_eigenvalue"] = c1.linear[0].approx();
    bool semi = c1.kind == EquilibriumKind::SemiHyperbolicSaddle || c1.kind == EquilibriumKind::SemiHyperbolicNode ||
                c1.kind == EquilibriumKind::SemiHyperbolicSaddleNode;
    out["pass"] = c22.kind == EquilibriumKind::SemiHyperbolicNode && c22.stability == Stability::Stable &&
                  c32.kind == EquilibriumKind::SemiHyperbolicSaddle && c42.kind == EquilibriumKind::HyperbolicSaddle &&
                  c65a.kind == EquilibriumKind::HyperbolicSaddle && c65b.kind == EquilibriumKind::HyperbolicSaddle &&
                  semi && c1.linear[0].rational_value() == 8;
    out["parameters"] = "c2_2 a3=1; c3_2 a3=a5=-1; c4_2 a3=-1; c6_5 a5=-1; c1 a3=4, a5=-4 at (1,0) of U1";
    return out;
}

json sectors_at_infinity(const ReproduceOptions&) {
    ResolveOptions o;
    o.infinity_curve = y_();
    auto c3 = resolve_local_portrait(chart_of(center_params(0, -1, -1), Chart::U2), 0, 0, o);
    auto c2 = resolve_local_portrait(chart_of(center_params(0, 1, 0), Chart::U2), 0, 0, o);
    bool ok3 = c3.sectors && c3.sectors->two_hyperbolic_on_infinity();
    bool ok2 = c2.sectors && c2.sectors->count(SectorType::Elliptic) >= 1;
    return {{"c3", {{"sectors", c3.sectors ? c3.sectors->str() : ""}, {"two_hyperbolic_on_infinity", ok3}}},
            {"c2", {{"sectors", c2.sectors ? c2.sectors->str() : ""}, {"has_elliptic", ok2}}},
            {"pass", ok3 && ok2}};
}

json finite_eq(const ReproduceOptions&) {
    auto e = finite_equilibria(FamilyParameters::parse("a5=-1").system());
    bool ok = e.points.size() == 1 && e.points[0].x.is_zero() && e.points[0].y.is_zero();
    return {{"equilibria", to_json(e)}, {"pass", ok}};
}

json center_checks(const ReproduceOptions&) {
    json out = json::object();
    bool ok = true;
    for (auto [params, want] : {std::pair{"a1=1,a3=-1,a5=-1", CenterVerdict::CenterUniqueEquilibrium},
                                std::pair{"a0=1", CenterVerdict::Focus},
                                std::pair{"a5=1", CenterVerdict::CenterExtraEquilibria}}) {
        auto c = center_check(FamilyParameters::parse(params));
        out[params] = to_string(c.verdict);
        ok = ok && c.verdict == want;
    }
    out["pass"] = ok;
    return out;
}

json global_centers(const ReproduceOptions&) {
    json out = json::object();
    bool ok = true;
    for (auto [params, want] : {std::pair{"a3=-1,a5=-1", GlobalVerdict::True},
                                std::pair{"a1=1,a3=-1,a5=-1", GlobalVerdict::False},
                                std::pair{"", GlobalVerdict::True}}) {
        auto p = FamilyParameters::parse(params);
        auto th = global_center_check(p, GlobalMode::Theorem);
        auto pl = global_center_check(p, GlobalMode::Pipeline);
        std::string key = *params ? params : "all-zero";
        out[key] = {{"theorem", to_string(th.verdict)}, {"pipeline", to_string(pl.verdict)}, {"reason", pl.reason}};
        if (!pl.escape.is_null()) out[key]["escape"] = pl.escape;
        ok = ok && th.verdict == want && pl.verdict == want;
    }
    out["pass"] = ok;
    return out;
}

json orbit_seed10(const ReproduceOptions&) {
    auto t = integrate(FamilyParameters::parse("a3=-1,a5=-1").system(), {10, 0});
    return {{"orbit", to_json(t)}, {"pass", t.verdict == OrbitVerdict::Closed && t.defect < 1e-6}};
}

json render(const std::string& params, const std::string& seeds, bool want_closed) {
    RenderSpec spec;
    spec.seeds = parse_seeds(seeds);
    spec.title = params;
    std::vector<OrbitTrace> traces;
    render_disc(FamilyParameters::parse(params).system(), spec, &traces);
    json orbits = json::array();
    bool all_closed = true, boundary = false;
    double reach = 0;
    for (const auto& t : traces) {
        orbits.push_back(to_string(t.verdict));
        all_closed = all_closed && t.verdict == OrbitVerdict::Closed;
        for (const auto& d : t.disc) reach = std::max(reach, std::hypot(d.first, d.second));
        boundary = boundary || (t.verdict == OrbitVerdict::Escaped &&
                                std::hypot(t.disc.back().first, t.disc.back().second) > 0.999);
    }
    bool ok = want_closed ? all_closed && reach > 0.99 : boundary;
    return {{"parameters", params}, {"seeds", seeds},     {"verdicts", orbits},
            {"disc_reach", reach},  {"meets_boundary", boundary}, {"pass", ok}};
}

json quintic_fixture(const ReproduceOptions&) {
    auto sys = load_system(fixture_path("quintic.json"));
    bool ok = sys == quintic_family();
    json params = json::array();
    for (int i : sys.parameters()) params.push_back(VariableTable::name(i));
    return {{"system", system_json(sys)}, {"parameters", params}, {"pass", ok}};
}

std::vector<ReproduceTarget> build() {
    auto fixed = [](json (*f)(const ReproduceOptions&)) { return std::function<json(const ReproduceOptions&)>(f); };
    std::vector<ReproduceTarget> t{
        {"parse-gamma", "parse y^5 as a single monomial; y * y^4 = y^5", fixed(parse_gamma)},
        {"parse-T2", "parse the first generator of T2", fixed(parse_t2)},
        {"U2-blowup", "vertical blow-up of the U2 chart and the x^2 rescale reproduce U2_1 and U2_2", fixed(u2_blowup)},
        {"U2-components", "degree-2 components of the U2 chart: -a1 x^2 and -a1 x y", fixed(u2_components)},
        {"lemma-roots", "x(-x^4 - 1) has the single real root 0", fixed(lemma_roots)},
        {"L3", "L1 = 0 and L3 = -(5a0 + a4 + a2)/16 against the stored fixture", fixed(l3)},
        {"L5", "L5 against the stored fixture modulo L3", [](const ReproduceOptions&) { return single_constant(5); }},
        {"L7", "L7 against the stored fixture modulo L3, L5", [](const ReproduceOptions&) { return single_constant(7); }},
        {"L9", "L9 against the stored fixture modulo L3, L5, L7",
         [](const ReproduceOptions&) { return single_constant(9); }},
        {"L5-L9", "L5, L7, L9 with their scale factors", fixed(higher_constants)},
        {"bautin", "even constants L2..L8 reduce to zero modulo the earlier odd ones", fixed(bautin)},
        {"reversibility", "the center subfamily is x-axis reversible and its constants vanish", fixed(reversibility)},
        {"weak-focus", "a0=1 is a weak focus of order 3; a3=-1 is a center candidate", fixed(weak_focus)},
        {"T1-basis", "reduced basis of T1 is {a0, a2, a4}", fixed(t1_basis)},
        {"L17", "L17 reduces to zero modulo the basis of L3..L15", fixed(l17)},
        {"radical-T", "radical double inclusion between the Lyapunov ideal and T", radical_t},
        {"T1-eval", "T1 vanishes at a3 = a5 = -1", fixed(t1_eval)},
        {"charts", "U1 and U2 charts of the center subfamily", fixed(charts)},
        {"c3-infinity", "case c3 has no U1 equilibria, only the U2 origin", fixed(c3_infinity)},
        {"characteristic-forms", "characteristic forms of U2, c2 and c4", fixed(characteristic_forms)},
        {"chains", "replay of every blow-up chain, with the c6_5 degrees", fixed(chains)},
        {"classifications", "classification of the chain endpoints and of the c1 infinite point",
         fixed(classifications)},
        {"sectors-infinity", "local portraits of the U2 origin in cases c3 and c2", fixed(sectors_at_infinity)},
        {"finite-equilibria", "a5=-1 has the origin as its only finite equilibrium", fixed(finite_eq)},
        {"center-check", "center check on the three reference parameter points", fixed(center_checks)},
        {"global-center", "global center verdicts, theorem and pipeline", fixed(global_centers)},
        {"orbit-seed-10", "the orbit through (10,0) closes for a3 = a5 = -1", fixed(orbit_seed10)},
        {"render-c3", "case c3 portrait: closed orbits reaching the disc boundary",
         [](const ReproduceOptions&) { return render("a3=-1,a5=-1", "0.5,0;1,0;1.5,0;2,0;3,0", true); }},
        {"render-c2", "case c2 portrait: an orbit meets the boundary circle",
         [](const ReproduceOptions&) { return render("a3=1", "0.5,0;3,0", false); }},
        {"quintic-fixture", "the bundled quintic.json is the symbolic family", fixed(quintic_fixture)},
    };
    return t;
}

}  // namespace

const std::vector<ReproduceTarget>& reproduce_targets() {
    static const std::vector<ReproduceTarget> targets = build();
    return targets;
}

nlohmann::json run_target(const std::string& name, const ReproduceOptions& opt) {
    for (const auto& t : reproduce_targets())
        if (t.name == name) {
            json r = t.run(opt);
            json out{{"target", name}, {"description", t.description}};
            out.update(r);
            return out;
        }
    throw std::out_of_range("unknown target " + name);
}

}  // namespace qc
