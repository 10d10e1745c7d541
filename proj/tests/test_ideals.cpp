#include <doctest.h>

#include "qc/groebner.hpp"
#include "qc/parse.hpp"
#include "support.hpp"

using namespace qc;

namespace {

std::vector<MultiPoly> P(std::initializer_list<const char*> src) {
    std::vector<MultiPoly> out;
    for (const char* s : src) out.push_back(parse(s));
    return out;
}

const std::vector<MultiPoly>& t1() {
    static auto v = P({"a0", "a2", "a4 + a2 + 5*a0"});
    return v;
}

const std::vector<MultiPoly>& t2() {
    static auto v = P({"18*a3^2 + 49*a2^2", "a0", "a1", "a4 + a2 + 5*a0", "7*a5 + a3"});
    return v;
}

}  // namespace

TEST_CASE("basis of a principal monomial ideal") {
    auto gb = groebner(P({"x"}));
    REQUIRE(gb.generators.size() == 1);
    CHECK(gb.generators[0] == parse("x"));
    CHECK(gb.reduced);
}

TEST_CASE("linear generators reduce to coordinates") {
    auto gb = groebner(t1());
    REQUIRE(gb.generators.size() == 3);
    CHECK(gb.generators[0] == parse("a0"));
    CHECK(gb.generators[1] == parse("a2"));
    CHECK(gb.generators[2] == parse("a4"));
}

TEST_CASE("lex elimination of a circle and a line") {
    auto gb = groebner(P({"x^2 + y^2 - 1", "x - y"}), MonomialOrder::lex({var::x, var::y}));
    REQUIRE(gb.generators.size() == 2);
    CHECK(gb.generators[0] == parse("y^2 - 1/2"));
    CHECK(gb.generators[1] == parse("x - y"));
}

TEST_CASE("unit ideal and empty input") {
    CHECK(groebner(P({"x", "x + 1"})).is_unit());
    CHECK(groebner(P({"x*y - 1", "y"})).is_unit());
    CHECK(groebner({}).generators.empty());
}

TEST_CASE("cyclic-3 basis against hand values") {
    auto gb = groebner(P({"x + y + a0", "x*y + y*a0 + a0*x", "x*y*a0 - 1"}), MonomialOrder::lex({var::x, var::y, var::a0}));
    // classical lex basis of cyclic-3 with x > y > a0
    REQUIRE(gb.generators.size() == 3);
    CHECK(gb.generators[0] == parse("a0^3 - 1"));
    CHECK(gb.generators[1] == parse("y^2 + y*a0 + a0^2"));
    CHECK(gb.generators[2] == parse("x + y + a0"));
}

TEST_CASE("normal forms") {
    auto gx = groebner(P({"x"}));
    CHECK(normal_form(parse("x*y"), gx).is_zero());
    CHECK(normal_form(parse("x*y + y^2 + 3"), gx) == parse("y^2 + 3"));
    auto g2 = groebner(t2());
    // a4 is congruent to -a2, and a2 is not in the ideal
    CHECK(normal_form(parse("a4"), g2) == parse("-a2"));
    CHECK(normal_form(parse("a4 + a2"), g2).is_zero());
    CHECK(normal_form(parse("a2*a3"), g2) == parse("a2*a3"));
    CHECK(normal_form(parse("1/3*a0*x + 2*a5"), g2) == parse("-2/7*a3"));
}

TEST_CASE("budget exhaustion is reported, never a wrong basis") {
    Budget tiny{1, 1000};
    auto r = buchberger(P({"x^3 - y*a0", "x*y^2 - a1", "y^3 - x*a2"}), MonomialOrder::degrevlex(), tiny);
    CHECK(r.status == GbStatus::BudgetExhausted);
    CHECK(r.basis.generators.empty());
    CHECK_THROWS_AS(groebner(P({"x^3 - y*a0", "x*y^2 - a1", "y^3 - x*a2"}), MonomialOrder::degrevlex(), tiny),
                    budget_exhausted);
}

TEST_CASE("radical membership") {
    CHECK(is_in_radical(parse("a0"), P({"a0^2"})).member);
    CHECK_FALSE(is_in_radical(parse("a1"), P({"a0"})).member);
    CHECK(is_in_radical(parse("x + y"), P({"x^3", "y^5"})).member);
    CHECK_FALSE(is_in_radical(parse("x"), P({"x^2 - y^3"})).member);
    CHECK_THROWS_AS(is_in_radical(parse("w"), P({"a0"})), std::invalid_argument);
}

TEST_CASE("intersection of ideals") {
    auto r = intersect(P({"x"}), P({"y"}));
    REQUIRE(r.status == GbStatus::Ok);
    REQUIRE(r.generators.size() == 1);
    CHECK(r.generators[0] == parse("x*y"));

    auto same = intersect(P({"x"}), P({"x"}));
    REQUIRE(same.generators.size() == 1);
    CHECK(same.generators[0] == parse("x"));

    auto t = intersect(t1(), t2());
    REQUIRE(t.status == GbStatus::Ok);
    auto g1 = groebner(t1()), g2 = groebner(t2());
    auto gt = groebner(t.generators);
    for (const auto& g : t.generators) {
        CHECK(is_member(g, g1));
        CHECK(is_member(g, g2));
    }
    // products of generators lie in the intersection
    for (const auto& p : t1())
        for (const auto& q : t2()) CHECK(is_member(p * q, gt));
}

TEST_CASE("buchberger is idempotent") {
    auto& g = testing::rng();
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<MultiPoly> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(testing::random_poly(g, {var::x, var::y, var::a0}, 3, 2));
        auto r = buchberger(gens);
        REQUIRE(r.ok());
        auto again = groebner(r.basis.generators);
        CHECK(again.generators == r.basis.generators);
        for (const auto& p : gens) CHECK(is_member(p, r.basis));
    }
}

TEST_CASE("membership reconstructs cofactors exactly") {
    auto& g = testing::rng();
    auto order = MonomialOrder::degrevlex();
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<MultiPoly> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(testing::random_poly(g, {var::x, var::y, var::a1}, 3, 2));
        MultiPoly f;
        for (const auto& h : gens) f += testing::random_poly(g, {var::x, var::y, var::a1}, 2, 2) * h;
        auto gb = groebner(gens, order);
        REQUIRE(is_member(f, gb));
        if (gb.generators.empty()) continue;
        auto d = divide(f, gb.generators, order);
        CHECK(d.remainder.is_zero());
        MultiPoly back = d.remainder;
        for (std::size_t i = 0; i < d.quotients.size(); ++i) back += d.quotients[i] * gb.generators[i];
        CHECK(back == f);
        // the division remainder agrees with the fraction-free normal form
        MultiPoly extra = testing::random_poly(g, {var::x, var::y}, 3, 3);
        CHECK(divide(f + extra, gb.generators, order).remainder == normal_form(f + extra, gb));
    }
}

TEST_CASE("evaluate ideals at parameter points") {
    std::map<int, Rational> pt{{var::a0, 0}, {var::a1, 0}, {var::a2, 0}, {var::a3, -1}, {var::a4, 0}, {var::a5, -1}};
    auto v = evaluate_ideal(t1(), pt);
    CHECK(v == std::vector<Rational>{0, 0, 0});
    std::map<int, Rational> a0{{var::a0, 1}, {var::a1, 0}, {var::a2, 0}, {var::a3, 0}, {var::a4, 0}, {var::a5, 0}};
    CHECK(evaluate_ideal(t1(), a0)[0] == 1);
    std::map<int, Rational> zero;
    for (int i = 0; i < 6; ++i) zero[var::a(i)] = 0;
    for (const auto& r : evaluate_ideal(t2(), zero)) CHECK(r == 0);
    CHECK_THROWS_AS(evaluate_ideal(t1(), {{var::a0, 1}}), std::invalid_argument);
}

TEST_CASE("real zeros of the second component lie in the first") {
    // 18 a3^2 + 49 a2^2 = 0 forces a2 = a3 = 0 over the reals; sample near that set
    auto& g = testing::rng();
    std::uniform_int_distribution<int> d(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<int, Rational> pt;
        for (int i = 0; i < 6; ++i) pt[var::a(i)] = Rational(d(g), 7);
        for (auto& [k, v] : pt) v.canonicalize();
        auto v2 = evaluate_ideal(t2(), pt);
        bool on2 = std::all_of(v2.begin(), v2.end(), [](const Rational& r) { return r == 0; });
        if (on2) {
            auto v1 = evaluate_ideal(t1(), pt);
            CHECK(std::all_of(v1.begin(), v1.end(), [](const Rational& r) { return r == 0; }));
        }
        // project onto the forced set and confirm both varieties contain it
        pt[var::a0] = pt[var::a1] = pt[var::a2] = pt[var::a3] = pt[var::a4] = pt[var::a5] = 0;
        for (const auto& r : evaluate_ideal(t2(), pt)) CHECK(r == 0);
        for (const auto& r : evaluate_ideal(t1(), pt)) CHECK(r == 0);
    }
}

TEST_CASE("order strings and comparisons") {
    auto o = MonomialOrder::degrevlex();
    CHECK(o.compare(parse("x^2").leading().first, parse("x*y").leading().first) < 0);
    auto lex = MonomialOrder::lex({var::x, var::y});
    CHECK(lex.compare(parse("x").leading().first, parse("y^5").leading().first) > 0);
    CHECK(o.str().find("w > a5") != std::string::npos);
}
