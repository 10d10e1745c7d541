#include <doctest.h>

#include "qc/compactify.hpp"
#include "qc/parse.hpp"
#include "support.hpp"

using namespace qc;

namespace {

// x' = y, y' = -x + a1 x y^4 + a3 x^3 y^2 + a5 x^5
PlanarSystem center() { return {y_(), parse("-x + a1*x*y^4 + a3*x^3*y^2 + a5*x^5")}; }

PlanarSystem center_at(int a1, int a3, int a5) {
    return center().specialize({{var::a1, Rational(a1)}, {var::a3, Rational(a3)}, {var::a5, Rational(a5)}});
}

}  // namespace

TEST_CASE("charts of the center family") {
    auto u1 = chart_system(center(), Chart::U1);
    CHECK(u1.P == parse("-y^4*x^2 + a1*x^4 - y^4 + a3*x^2 + a5"));
    CHECK(u1.Q == parse("-y^5*x"));
    CHECK(u1.source_degree == 5);
    CHECK_FALSE(u1.log.empty());
    auto u2 = chart_system(center(), Chart::U2);
    CHECK(u2.P == parse("-a5*x^6 + y^4*x^2 - a3*x^4 + y^4 - a1*x^2"));
    CHECK(u2.Q == parse("x*y*(-a5*x^4 + y^4 - a3*x^2 - a1)"));
}

TEST_CASE("linear center charts") {
    PlanarSystem lin{y_(), -x_()};
    auto u1 = chart_system(lin, Chart::U1);
    CHECK(u1.P == parse("-1 - x^2"));
    CHECK(u1.Q == parse("-x*y"));
    // n = 1: the antipodal chart carries the same field
    auto v1 = chart_system(lin, Chart::V1);
    CHECK(v1.P == u1.P);
    CHECK(v1.Q == u1.Q);
    CHECK_THROWS_AS(chart_system({MultiPoly(1), MultiPoly(2)}, Chart::U1), std::invalid_argument);
}

TEST_CASE("V charts differ from U charts by (-1)^(n-1)") {
    auto& g = testing::rng();
    for (int trial = 0; trial < 30; ++trial) {
        PlanarSystem s{testing::random_poly(g, {var::x, var::y}, 4, 3), testing::random_poly(g, {var::x, var::y}, 4, 3)};
        if (s.degree() < 1) continue;
        int sign = (s.degree() - 1) % 2 == 0 ? 1 : -1;
        for (auto [u, v] : {std::pair{Chart::U1, Chart::V1}, std::pair{Chart::U2, Chart::V2}}) {
            auto cu = chart_system(s, u), cv = chart_system(s, v);
            CHECK(cv.P == cu.P * sign);
            CHECK(cv.Q == cu.Q * sign);
        }
    }
}

TEST_CASE("degree bound and chart consistency") {
    auto s = center();
    auto u1 = chart_system(s, Chart::U1), u2 = chart_system(s, Chart::U2);
    CHECK(u1.P.xy_degree() <= 6);
    CHECK(u1.Q.xy_degree() <= 6);
    CHECK(u2.P.xy_degree() <= 6);
    CHECK(u2.Q.xy_degree() <= 6);
    // on the overlap s = 1/u, t = v/u; with time factors v^(n-1) and t^(n-1) the fields satisfy
    // u^(n+1) F2(1/u, v/u) = (-F1_u, u F1_v - v F1_u)
    auto at_inverse = [](const MultiPoly& p) {
        std::vector<MultiPoly::Term> terms;
        for (const auto& [m, c] : p.terms()) {
            Mono t = m;
            std::int64_t i = m.e[var::x], j = m.e[var::y];
            t.e[var::x] = 6 - i - j;
            t.e[var::y] = j;
            terms.emplace_back(t, c);
        }
        return MultiPoly::from_terms(std::move(terms));
    };
    CHECK(at_inverse(u2.P) == -u1.P);
    CHECK(at_inverse(u2.Q) == x_() * u1.Q - y_() * u1.P);
}

TEST_CASE("infinite equilibria") {
    SUBCASE("two points in U1 and the U2 origin") {
        auto inf = infinite_equilibria(center_at(0, 4, -4));
        CHECK_FALSE(inf.line_at_infinity);
        REQUIRE(inf.points.size() == 3);
        CHECK(inf.points[0].chart == Chart::U1);
        CHECK(inf.points[0].x.exact);
        CHECK(inf.points[0].x.value == -1);
        CHECK(inf.points[1].x.value == 1);
        CHECK(inf.points[2].chart == Chart::U2);
    }
    SUBCASE("irrational points") {
        auto inf = infinite_equilibria(center_at(0, 2, -4));
        REQUIRE(inf.points.size() == 3);
        CHECK_FALSE(inf.points[1].x.exact);
        CHECK(inf.points[1].x.approx() == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("no U1 points when a3 < 0") {
        auto inf = infinite_equilibria(center_at(0, -1, -1));
        REQUIRE(inf.points.size() == 1);
        CHECK(inf.points[0].chart == Chart::U2);
    }
    SUBCASE("linear center") {
        auto inf = infinite_equilibria({y_(), -x_()});
        CHECK(inf.points.empty());
        CHECK_FALSE(inf.line_at_infinity);
    }
    SUBCASE("line of equilibria") {
        // radial field of degree 2: Q x - P y vanishes identically
        auto inf = infinite_equilibria({parse("x*(x + y)"), parse("y*(x + y)")});
        CHECK(inf.line_at_infinity);
    }
    CHECK_THROWS_AS(infinite_equilibria(center()), std::invalid_argument);
}
