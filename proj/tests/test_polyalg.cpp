#include "qc/algebraic.hpp"
#include "qc/json_io.hpp"
#include "qc/parse.hpp"
#include "qc/upoly.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace qc;
using qc::testing::random_poly;
using qc::testing::rng;

namespace {
MultiPoly P(const char* s) { return parse(s); }
}  // namespace

TEST_CASE("rational parsing is canonical") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-0/7") == 0);
    CHECK(parse_rational("0").get_den() == 1);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1.5"));
    CHECK_THROWS(parse_rational("3/-2"));
}

TEST_CASE("parse basic expressions") {
    MultiPoly p = P("-x + a5*x^5");
    REQUIRE(p.size() == 2);
    Mono x5;
    x5.e[var::x] = 5;
    x5.e[var::a5] = 1;
    Mono x1;
    x1.e[var::x] = 1;
    CHECK(p.coefficient(x5) == 1);
    CHECK(p.coefficient(x1) == -1);

    MultiPoly y5 = P("y^5");
    REQUIRE(y5.size() == 1);
    CHECK(y5.leading().first.e[var::y] == 5);
    CHECK(y5.leading().second == 1);

    MultiPoly t2 = P("18*a3^2 + 49*a2^2");
    CHECK(t2 == 18 * a_(3).pow(2) + 49 * a_(2).pow(2));
    CHECK(P("-1/16*(5*a0+a4+a2)") == Rational(-1, 16) * (5 * a_(0) + a_(4) + a_(2)));
    CHECK(P("-x^2") == -(x_() * x_()));
    CHECK(P("2^3") == MultiPoly(8));
    CHECK(P("(x+y)/2") == Rational(1, 2) * (x_() + y_()));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse("x + * y");
        FAIL("expected error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 4);
    }
    try {
        parse("x + zeta");
        FAIL("expected error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 4);
        CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("x^(-1)"), parse_error);
    CHECK_THROWS_AS(parse("x^-1"), parse_error);
    CHECK_THROWS_AS(parse("x^1.5"), parse_error);
    CHECK_THROWS_AS(parse("x/y"), parse_error);
    CHECK_THROWS_AS(parse("(x+y"), parse_error);
    CHECK_THROWS_AS(parse(""), parse_error);
}

TEST_CASE("arithmetic examples") {
    CHECK((x_() + (-x_())).is_zero());
    CHECK((x_() * x_() + y_() * y_()).pow(2) == P("x^4 + 2*x^2*y^2 + y^4"));
    CHECK(y_() * y_().pow(4) == P("y^5"));
    CHECK(MultiPoly(0).is_zero());
    CHECK(x_().pow(0) == MultiPoly(1));
}

TEST_CASE("substitute examples") {
    CHECK(substitute(x_() * y_(), {{var::y, y_() * x_()}}) == P("x^2*y"));
    MultiPoly p = P("a1*x^3 - y + 7");
    CHECK(substitute(p, {}) == p);
    CHECK(evaluate(P("a0*x + a1"), {{var::a0, 2}, {var::a1, -1}}) == P("2*x - 1"));
}

TEST_CASE("diff examples") {
    CHECK(diff(P("x^2+y^2"), var::x) == P("2*x"));
    CHECK(diff(P("(x^2+y^2)^2"), var::y) == P("4*y*(x^2+y^2)"));
    // truncated formal integral at p=3 with symbolic coefficients: derivative has degree <= 2
    MultiPoly H = P("(x^2+y^2)/2 + a0*x^3 + a1*x^2*y + a2*x*y^2 + a3*y^3");
    CHECK(diff(H, var::x).xy_degree() == 2);
    CHECK(diff(H, var::y).xy_degree() == 2);
    CHECK_THROWS(diff(H, 42));
}

TEST_CASE("homogeneous components") {
    MultiPoly U2x = P("-(-a5)*x^6 + y^4*x^2 - a3*x^4 + y^4 - a1*x^2");
    MultiPoly U2y = P("x*y*(-a5*x^4 + y^4 - a3*x^2 - a1)");
    CHECK(homogeneous_component(U2x, 2) == P("-a1*x^2"));
    CHECK(homogeneous_component(U2y, 2) == P("-a1*x*y"));
    CHECK(homogeneous_component(MultiPoly(), 3).is_zero());
}

TEST_CASE("real roots: examples") {
    auto r = real_roots(P("x*(-x^4-1)"));
    REQUIRE(r.size() == 1);
    CHECK(r[0].exact);
    CHECK(r[0].value == 0);

    r = real_roots(P("x*(x^4-1)"));
    REQUIRE(r.size() == 3);
    CHECK(r[0].value == -1);
    CHECK(r[1].value == 0);
    CHECK(r[2].value == 1);

    // a32*x^2 - a^2 with a32 = 4, a = 2
    r = real_roots(P("4*x^2 - 4"));
    REQUIRE(r.size() == 2);
    CHECK(r[0].value == -1);
    CHECK(r[1].value == 1);

    CHECK_THROWS(real_roots(MultiPoly()));
    CHECK(real_roots(MultiPoly(3)).empty());
}

TEST_CASE("real roots: irrational, rational with large denominators, multiplicities") {
    auto r = real_roots(P("x^2 - 2"));
    REQUIRE(r.size() == 2);
    CHECK_FALSE(r[0].exact);
    CHECK(r[1].interval.lo * r[1].interval.lo < 2);
    CHECK(r[1].interval.hi * r[1].interval.hi > 2);

    r = real_roots(P("(7*x - 3)*(x^2 + 1)*(13*x + 5)"));
    REQUIRE(r.size() == 2);
    CHECK(r[0].value == Rational(-5, 13));
    CHECK(r[1].value == Rational(3, 7));

    r = real_roots(P("(x-1)^3*(x+2)^2*(x^2-3)"));
    REQUIRE(r.size() == 4);
    CHECK(r[0].multiplicity == 2);
    CHECK(r[0].value == -2);
    CHECK(r[1].multiplicity == 1);
    CHECK(r[2].multiplicity == 3);
    CHECK(r[2].value == 1);
    CHECK(r[3].multiplicity == 1);

    r = real_roots(P("x^3 - x"), Interval{0, 1});
    REQUIRE(r.size() == 2);
    CHECK(r[0].value == 0);
    CHECK(r[1].value == 1);
}

TEST_CASE("real roots agree with a sign-change grid oracle") {
    auto& g = rng();
    std::uniform_int_distribution<int> nroots(0, 5), rnum(-40, 40), rden(1, 7), quad(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        // product of distinct linear factors, possibly times an irreducible quadratic
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
        auto found = real_roots(p);
        REQUIRE(found.size() == roots.size());
        // oracle: count sign changes on a grid finer than the root spacing (1/49)
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
        CHECK(changes == static_cast<int>(found.size()));
        std::size_t i = 0;
        for (const auto& q : roots) {
            CHECK(found[i].exact);
            CHECK(found[i].value == q);
            ++i;
        }
    }
}

TEST_CASE("simplest rational") {
    CHECK(simplest_rational(Rational(3, 10), Rational(4, 10)) == Rational(1, 3));
    CHECK(simplest_rational(Rational(-4, 10), Rational(-3, 10)) == Rational(-1, 3));
    CHECK(simplest_rational(Rational(-1), Rational(2)) == 0);
    CHECK(simplest_rational(Rational(5, 2), Rational(5, 2)) == Rational(5, 2));
}

TEST_CASE("ring laws on random triples") {
    auto& g = rng();
    std::vector<int> vars{var::x, var::y, var::a0};
    for (int i = 0; i < 500; ++i) {
        MultiPoly a = random_poly(g, vars), b = random_poly(g, vars), c = random_poly(g, vars);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("parse print round trip") {
    auto& g = rng();
    std::vector<int> vars{var::x, var::y, var::a0, var::a3, var::w};
    for (int i = 0; i < 500; ++i) {
        MultiPoly a = random_poly(g, vars, 6, 4);
        CHECK(parse(a.str()) == a);
    }
}

TEST_CASE("substitution composes") {
    auto& g = rng();
    std::vector<int> vars{var::x, var::y};
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = random_poly(g, vars, 4, 2);
        std::map<int, MultiPoly> s{{var::x, random_poly(g, vars, 2, 2)}, {var::y, random_poly(g, vars, 2, 1)}};
        std::map<int, MultiPoly> t{{var::x, random_poly(g, vars, 2, 1)}, {var::y, random_poly(g, vars, 2, 2)}};
        std::map<int, MultiPoly> composed;
        for (const auto& kv : s) composed[kv.first] = substitute(kv.second, t);
        CHECK(substitute(substitute(p, s), t) == substitute(p, composed));
    }
}

TEST_CASE("diff is linear and satisfies the product rule") {
    auto& g = rng();
    std::vector<int> vars{var::x, var::y, var::a1};
    for (int i = 0; i < 300; ++i) {
        MultiPoly a = random_poly(g, vars), b = random_poly(g, vars);
        Rational c = qc::testing::random_rational(g);
        for (int v : vars) {
            CHECK(diff(a + c * b, v) == diff(a, v) + c * diff(b, v));
            CHECK(diff(a * b, v) == diff(a, v) * b + a * diff(b, v));
        }
    }
}

TEST_CASE("JSON round trip is bit exact") {
    MultiPoly p = P("-1/16*(5*a0+a4+a2) + x^3*y - 7/3*w");
    auto j = poly_to_json(p);
    CHECK(poly_from_json(j) == p);
    CHECK(poly_to_json(poly_from_json(j)).dump() == j.dump());
    CHECK(j["terms"][0]["exp"].size() == 9);
    CHECK_THROWS(poly_from_json(nlohmann::json::parse(R"({"vars":["x","q"],"terms":[]})")));
}

TEST_CASE("exponent overflow is a hard error") {
    Mono m;
    m.e[var::x] = std::numeric_limits<std::int64_t>::max();
    MultiPoly p = MultiPoly::monomial(m, 1);
    CHECK_THROWS_AS(p * x_(), std::overflow_error);
}

TEST_CASE("algebraic numbers") {
    auto roots = real_roots(P("x^2 - 2"));
    auto alpha = AlgebraicReal::from_root(roots[1]);
    AlgNum s = AlgNum::generator(alpha);
    CHECK((s * s - AlgNum(2)).is_zero());
    CHECK(s.sign() == 1);
    CHECK((s - AlgNum(Rational(141, 100))).sign() == 1);
    CHECK((s - AlgNum(Rational(142, 100))).sign() == -1);
    AlgNum inv = s.inverse();
    CHECK((inv * s - AlgNum(1)).is_zero());
    CHECK(std::abs(inv.approx() - 0.7071067811865476) < 1e-14);
    // reducible defining polynomial: alpha = 1 as a root of (t-1)(t^2-2)... exact roots become rational
    auto r2 = real_roots(P("(x-1)*(x^2-2)"));
    REQUIRE(r2.size() == 3);
    CHECK(r2[1].exact);
    // negative root and sign of an expression vanishing at the other conjugate
    auto beta = AlgebraicReal::from_root(roots[0]);
    AlgNum b = AlgNum::generator(beta);
    CHECK(b.sign() == -1);
    CHECK_THROWS_AS(b - AlgNum(UPoly::x(), alpha), context_mismatch);
}
