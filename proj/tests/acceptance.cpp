// One PASS/FAIL line per acceptance criterion. Exit status 1 when any criterion fails.
#include "qc/compactify.hpp"
#include "qc/desing.hpp"
#include "qc/globalcenter.hpp"
#include "qc/groebner.hpp"
#include "qc/lyapunov.hpp"
#include "qc/parse.hpp"
#include "qc/portrait.hpp"
#include "qc/reference.hpp"
#include "qc/reproduce.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace qc;

namespace {

// pinned limits
constexpr double kLimit1 = 60, kLimit2 = 600, kLimit5 = 60, kLimit6 = 120, kLimit8 = 600;
constexpr double kLinearDefect = 1e-9;
constexpr double kSectionDefect = 1e-6;
constexpr double kEscapeFactor = 1e3;
constexpr int kRingTriples = 10000;
constexpr int kNearSamples = 1000;
constexpr std::uint64_t kOracleSteps = 50000000;

bool include_garbled = false;

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool zero_all(const std::vector<Rational>& v) {
    for (const auto& r : v)
        if (r != 0) return false;
    return true;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

Outcome c1() {
    auto res = compute_lyapunov(quintic_family(), 3, true);
    bool l1 = res.sequence.at(1).is_zero();
    bool l3 = res.sequence.at(3) == parse("-1/16*(5*a0 + a4 + a2)") && res.sequence.at(3) == reference_constant(3);
    return {l1 && l3, "L1 " + std::string(l1 ? "= 0" : "!= 0") + ", L3 = " + res.sequence.at(3).str()};
}

Outcome c2() {
    auto seq = lyapunov_constants(quintic_family(), 9);
    bool ok = true;
    std::string d;
    for (int j : {5, 7, 9}) {
        auto m = match_modulo(seq.at(j), reference_constant(j), seq.odd_entries(j - 2));
        ok = ok && m.matches && m.factor > 0;
        d += "L" + std::to_string(j) + (m.matches ? " factor " + m.factor.get_str() : " no match") + "; ";
    }
    auto raw7 = match_modulo(seq.at(7), reference_constant(7, false), seq.odd_entries(5));
    d += std::string("L7 as displayed ") + (raw7.matches ? "matches" : "differs (sign erratum in one term)");
    return {ok, d};
}

Outcome c3() {
    auto raw = lyapunov_constants(quintic_family(), 17);
    auto gb = buchberger(raw.odd_entries(15), MonomialOrder::degrevlex());
    if (!gb.ok()) return {false, "budget exhausted at " + MonomialOrder::degrevlex().str()};
    MultiPoly nf = normal_form(raw.at(17), gb.basis);
    return {nf.is_zero(), "normal form of L17 (" + std::to_string(raw.at(17).size()) + " terms) modulo " +
                              std::to_string(gb.basis.generators.size()) + "-element basis is " +
                              (nf.is_zero() ? "0" : "nonzero") + ", " + fmt(gb.stats.seconds) + " s in Buchberger"};
}

Outcome c4() {
    ReproduceOptions opt;
    opt.include_garbled = include_garbled;
    auto r = run_target("radical-T", opt);
    if (r.value("budget_exhausted", false)) return {false, "budget exhausted"};
    int fwd = 0, t1 = 0, t1_total = 0;
    for (const auto& e : r["L_in_radical_T"]) fwd += e["in_radical_T"].get<bool>();
    std::string missing;
    for (const auto& e : r["T_in_radical_R"])
        if (e["ideal"] == "T1") {
            ++t1_total;
            if (e["in_radical_R"].get<bool>())
                ++t1;
            else
                missing += " " + e["generator"].get<std::string>();
        }
    std::string comps;
    for (const auto& c : r["T_components"]) comps += (comps.empty() ? "" : "∩") + c.get<std::string>();
    return {r["pass"].get<bool>(), "L3..L15 in sqrt(" + comps + "): " + std::to_string(fwd) + "/7; T1 generators in " +
                                       "sqrt<L3..L15>: " + std::to_string(t1) + "/" + std::to_string(t1_total) +
                                       (missing.empty() ? "" : " (not:" + missing + ")")};
}

// V_R(T2): 18 a3^2 + 49 a2^2 forces a2 = a3 = 0, then the linear generators force the rest to 0.
// V_R(T3) on the stored reading: (a2 - 10 a0)^2 + 16 a5^2 forces a2 = 10 a0, a5 = 0; then the fourth
// generator becomes a3^2 + 400 a0^2, forcing a3 = a0 = 0, and a4 = 0; a1 stays free.
Outcome c5() {
    auto t1 = reference_ideal("T1").generators, t2 = reference_ideal("T2").generators,
         t3 = reference_ideal("T3").generators;
    bool ok = true;
    std::string d;
    bool sos2 = t2[0] == parse("18*a3^2 + 49*a2^2");
    bool sos3a = t3[0] == parse("(a2 - 10*a0)^2 + 16*a5^2");
    bool sos3b = substitute(t3[3], {{var::a2, 10 * a_(0)}, {var::a5, MultiPoly(0)}}) == parse("a3^2 + 400*a0^2");
    ok = sos2 && sos3a && sos3b;
    d += std::string("sum-of-squares forms ") + (ok ? "verified" : "NOT verified") + "; ";

    auto& g = testing::rng();
    auto point = [](Rational a1) {
        std::map<int, Rational> p;
        for (int i = 0; i < 6; ++i) p[var::a(i)] = 0;
        p[var::a1] = a1;
        return p;
    };
    bool on = zero_all(evaluate_ideal(t2, point(0))) && zero_all(evaluate_ideal(t1, point(0)));
    for (int k = 0; k < 20; ++k) {
        auto p = point(testing::random_rational(g));
        on = on && zero_all(evaluate_ideal(t3, p)) && zero_all(evaluate_ideal(t1, p));
    }
    ok = ok && on;
    d += std::string("T1 vanishes on V(T2) and on the stored V(T3) ") + (on ? "yes" : "NO") + "; ";

    // near-samples: perturb each coordinate of a candidate point with probability 1/2, so some
    // samples stay on the candidate set and the rest land just off it
    std::uniform_int_distribution<int> small(-3, 3), den(50, 400), coin(0, 1);
    int spurious = 0, hits = 0;
    for (int k = 0; k < kNearSamples; ++k) {
        auto p = point(k % 2 ? testing::random_rational(g) : Rational(0));
        for (int i = 0; i < 6; ++i) {
            if (coin(g)) continue;
            Rational e(small(g), den(g));
            e.canonicalize();
            p[var::a(i)] += e;
        }
        for (const auto* t : {&t2, &t3}) {
            if (!zero_all(evaluate_ideal(*t, p))) continue;
            ++hits;
            if (!zero_all(evaluate_ideal(t1, p))) ++spurious;
        }
    }
    ok = ok && spurious == 0;
    d += std::to_string(kNearSamples) + " near-samples: " + std::to_string(hits) + " zeros of T2/T3, " +
         std::to_string(spurious) + " off V(T1)";
    return {ok, d};
}

Outcome c6() {
    auto ch = run_target("charts");
    auto cc = run_target("chains");
    int matched = 0, total = 0, errata = 0;
    for (const auto& e : cc["entries"])
        if (e.contains("matches")) {
            ++total;
            matched += e["matches"].get<bool>();
            errata += e.value("display_erratum", false);
        }
    bool ok = ch["pass"].get<bool>() && cc["pass"].get<bool>();
    return {ok, std::string("U1/U2 ") + (ch["pass"].get<bool>() ? "exact" : "differ") + "; chains " +
                    std::to_string(matched) + "/" + std::to_string(total) + " exact (" + std::to_string(errata) +
                    " against corrected displays); c6_5 deg f " + std::to_string(cc["c6_5"]["deg_f"].get<int>()) +
                    ", deg g " + std::to_string(cc["c6_5"]["deg_g"].get<int>())};
}

Outcome c7() {
    auto r = run_target("classifications");
    bool ok = r["pass"].get<bool>();
    // nonzero eigenvalue at the c1 points equals 2 a sqrt(a32) with the sign of the point
    std::string d;
    for (auto [a3, a5] : {std::pair{Rational(4), Rational(-4)}, std::pair{Rational(2), Rational(-1)}}) {
        std::map<int, Rational> v{{var::a1, Rational(0)}, {var::a3, a3}, {var::a5, a5}};
        auto sys = center_system().specialize(v);
        auto u1 = chart_system(sys, Chart::U1).system();
        double expect = 2 * std::sqrt(-a5.get_d()) * std::sqrt(a3.get_d());
        for (const auto& p : infinite_equilibria(sys).points) {
            if (p.chart != Chart::U1) continue;
            AlgNum x0 = p.x.exact ? AlgNum(p.x.value) : AlgNum::generator(AlgebraicReal::from_root(p.x));
            auto rep = classify(u1, x0, 0);
            bool semi = rep.kind == EquilibriumKind::SemiHyperbolicSaddle ||
                        rep.kind == EquilibriumKind::SemiHyperbolicNode ||
                        rep.kind == EquilibriumKind::SemiHyperbolicSaddleNode;
            bool eig = rep.linear[0].sign() == x0.sign() &&
                       std::fabs(rep.linear[0].approx() - x0.sign() * expect) < 1e-9 * expect;
            ok = ok && semi && eig;
        }
    }
    for (const auto& k : {"c2_2_origin", "c3_2_origin", "c4_2_origin", "c6_5_origin", "c6_5_(0,1)", "c1_point"})
        d += std::string(k) + " " + r[k]["kind"].get<std::string>() + "; ";
    d += "c1 eigenvalue sign checked at a32 = 4, 2";
    return {ok, d};
}

Outcome c8() {
    int agree = 0;
    for (int a3 = -2; a3 <= 0; ++a3)
        for (int a5 = -2; a5 <= 0; ++a5) {
            auto p = FamilyParameters::from_assignments({{var::a3, Rational(a3)}, {var::a5, Rational(a5)}});
            auto th = global_center_check(p, GlobalMode::Theorem);
            auto pl = global_center_check(p, GlobalMode::Pipeline);
            agree += th.verdict == pl.verdict;
        }
    int escaped = 0, samples = 0;
    for (auto s : {"a1=1,a3=-1,a5=-1", "a1=1", "a1=1,a3=-2,a5=-1/2"}) {
        ++samples;
        auto pl = global_center_check(FamilyParameters::parse(s), GlobalMode::Pipeline);
        escaped += pl.verdict == GlobalVerdict::False && pl.escape.value("verdict", "") == "escaped";
    }
    return {agree == 9 && escaped == samples, "grid agreement " + std::to_string(agree) + "/9; a1=1 false with " +
                                                  "escape evidence " + std::to_string(escaped) + "/" +
                                                  std::to_string(samples)};
}

double oracle_step(const OrbitTrace& t) { return t.asinh_length / static_cast<double>(t.steps) / 10; }

Outcome c9() {
    bool ok = true;
    std::string d;
    IntegrationSpec half;
    half.tolerance = config().integration_tolerance / 2;

    auto lin = integrate({y_(), -x_()}, {1, 0});
    ok = ok && lin.verdict == OrbitVerdict::Closed && lin.defect < kLinearDefect;
    d += "linear defect " + fmt(lin.defect) + "; ";

    auto fam = FamilyParameters::parse("a3=-1,a5=-1").system();
    for (double r : {1.0, 5.0, 10.0}) {
        auto t = integrate(fam, {r, 0});
        auto h = integrate(fam, {r, 0}, half);
        auto f = integrate_fixed_step(fam, {r, 0}, oracle_step(t), kOracleSteps);
        bool good = t.verdict == OrbitVerdict::Closed && t.defect < kSectionDefect &&
                    h.verdict == OrbitVerdict::Closed && f.verdict == OrbitVerdict::Closed;
        ok = ok && good;
        d += "seed " + fmt(r) + " " + to_string(t.verdict) + " defect " + fmt(t.defect) + " (half " +
             to_string(h.verdict) + ", oracle " + to_string(f.verdict) + "); ";
    }

    auto esc = FamilyParameters::parse("a1=1,a3=-1,a5=-1").system();
    Point2 seed{1, 3};
    auto t = integrate(esc, seed);
    auto h = integrate(esc, seed, half);
    auto f = integrate_fixed_step(esc, seed, oracle_step(t), kOracleSteps);
    bool past = t.escape_radius > kEscapeFactor * std::hypot(seed.first, seed.second);
    bool good = t.verdict == OrbitVerdict::Escaped && past && h.verdict == OrbitVerdict::Escaped &&
                f.verdict == OrbitVerdict::Escaped;
    ok = ok && good;
    d += "a1=1 seed (1,3) " + to_string(t.verdict) + " at |p| = " + fmt(t.escape_radius) + " (half " +
         to_string(h.verdict) + ", oracle " + to_string(f.verdict) + ")";
    return {ok, d};
}

Outcome c10() {
    auto& g = testing::rng();
    int bad = 0;
    std::vector<int> vars{var::x, var::y, var::a0};
    for (int i = 0; i < kRingTriples; ++i) {
        MultiPoly a = testing::random_poly(g, vars), b = testing::random_poly(g, vars), c = testing::random_poly(g, vars);
        bool laws = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
                    a * (b + c) == a * b + a * c && (a - a).is_zero();
        bad += !laws;
    }
    std::string d = "ring laws " + std::to_string(kRingTriples - bad) + "/" + std::to_string(kRingTriples) + "; ";
    bool ok = bad == 0;

    int rt = 0;
    for (int i = 0; i < 1000; ++i) {
        MultiPoly a = testing::random_poly(g, {var::x, var::y, var::a0, var::a3, var::w}, 6, 4);
        rt += parse(a.str()) == a;
    }
    ok = ok && rt == 1000;
    d += "round trip " + std::to_string(rt) + "/1000; ";

    int rev = 0;
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly P = -y_(), Q = x_();
        MultiPoly extra = testing::random_poly(g, {var::x, var::y}, 6, 3);
        for (const auto& [m, c] : extra.terms()) {
            if (m.xy_degree() < 2) continue;
            (m.e[var::y] % 2 == 1 ? P : Q) += MultiPoly::monomial(m, c);
        }
        PlanarSystem s{P, Q};
        bool all = reversibility_test(s) != Reversibility::None;
        for (const auto& e : lyapunov_constants(s, 9).entries) all = all && e.value.is_zero();
        rev += all;
    }
    ok = ok && rev == 10;
    d += "reversible => L = 0 " + std::to_string(rev) + "/10; ";

    auto bautin = bautin_inclusion_check(lyapunov_constants(quintic_family(), 9));
    ok = ok && bautin.ok() && bautin.items.size() == 4;
    d += std::string("Bautin j <= 4 ") + (bautin.ok() ? "ok" : "FAILED") + "; ";

    int idem = 0;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<MultiPoly> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(testing::random_poly(g, {var::x, var::y, var::a0}, 3, 2));
        auto r = buchberger(gens);
        idem += r.ok() && groebner(r.basis.generators).generators == r.basis.generators;
    }
    ok = ok && idem == 25;
    d += "GB idempotent " + std::to_string(idem) + "/25; ";

    int sturm = 0;
    std::uniform_int_distribution<int> nroots(0, 5), rnum(-40, 40), rden(1, 7), quad(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<Rational> roots;
        int n = nroots(g);
        while (static_cast<int>(roots.size()) < n) {
            Rational q(rnum(g), rden(g));
            q.canonicalize();
            roots.insert(q);
        }
        UPoly p(1);
        for (const auto& q : roots) p = p * UPoly(std::vector<Rational>{-q, 1});
        if (quad(g)) p = p * UPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
        // sign changes on a grid finer than the root spacing (1/49)
        int changes = 0;
        Rational step(1, 200);
        int last = p.sign_at(Rational(-50));
        for (Rational v = Rational(-50) + step; v <= 50; v += step) {
            int s = p.sign_at(v);
            if (s == 0) {
                ++changes;
                v += step;
                last = p.sign_at(v);
                continue;
            }
            if (s != last) ++changes;
            last = s;
        }
        auto seq = sturm_sequence(p);
        sturm += changes == sturm_count(seq, Rational(-50), Rational(50)) &&
                 changes == static_cast<int>(real_roots(p).size());
    }
    ok = ok && sturm == 200;
    d += "Sturm vs grid " + std::to_string(sturm) + "/200";
    return {ok, d};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--include-garbled") == 0) include_garbled = true;
    if (const char* e = std::getenv("QC_INCLUDE_GARBLED")) include_garbled = std::strcmp(e, "0") != 0;

    struct Criterion {
        int id;
        std::string title;
        double limit;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "L1 and L3 exact", kLimit1, c1},
        {2, "L5, L7, L9 modulo earlier constants", kLimit2, c2},
        {3, "L17 reduces to 0", config().groebner.max_seconds, c3},
        {4, "radical double inclusion", 0, c4},
        {5, "real-variety containment", kLimit5, c5},
        {6, "symbolic identities", kLimit6, c6},
        {7, "classification fixtures", 0, c7},
        {8, "theorem agreement", kLimit8, c8},
        {9, "numeric orbits", 0, c9},
        {10, "property suites", 0, c10},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.limit <= 0 || s < c.limit;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << ": " << o.detail << " ["
                  << fmt(s) << " s" << (c.limit > 0 ? ", limit " + fmt(c.limit) + " s" : "") << "]"
                  << (in_time ? "" : " (over time limit)") << std::endl;
    }
    return failed ? 1 : 0;
}
