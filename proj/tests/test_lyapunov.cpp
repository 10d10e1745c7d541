#include <doctest.h>

#include "qc/groebner.hpp"
#include "qc/lyapunov.hpp"
#include "qc/parse.hpp"
#include "qc/reference.hpp"
#include "support.hpp"

#include <cmath>

using namespace qc;

namespace {

std::map<int, Rational> point(std::initializer_list<std::pair<int, int>> nonzero) {
    std::map<int, Rational> m;
    for (int i = 0; i < 6; ++i) m[var::a(i)] = 0;
    for (auto [i, v] : nonzero) m[var::a(i)] = v;
    return m;
}

// Energy gained over one clockwise turn of x' = y, y' = -x + f, started at (r, 0); RK4 with fixed step.
double energy_gain(const std::array<double, 6>& a, double r) {
    auto field = [&](double x, double y, double& dx, double& dy) {
        double f = 0;
        for (int i = 0; i < 6; ++i) f += a[i] * std::pow(x, i) * std::pow(y, 5 - i);
        dx = y;
        dy = -x + f;
    };
    double x = r, y = 0, t = 0, h = 1e-3;
    for (;;) {
        double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
        field(x, y, k1x, k1y);
        field(x + h / 2 * k1x, y + h / 2 * k1y, k2x, k2y);
        field(x + h / 2 * k2x, y + h / 2 * k2y, k3x, k3y);
        field(x + h * k3x, y + h * k3y, k4x, k4y);
        double nx = x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
        double ny = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        t += h;
        if (t > 3 && y > 0 && ny <= 0 && nx > 0) {
            double s = y / (y - ny);
            double cx = x + s * (nx - x), cy = y + s * (ny - y);
            return (cx * cx + cy * cy) / 2 - r * r / 2;
        }
        x = nx;
        y = ny;
    }
}

}  // namespace

TEST_CASE("first constants of the quintic family") {
    auto seq = lyapunov_constants(quintic_family(), 3);
    CHECK(seq.at(1).is_zero());
    CHECK(seq.at(2).is_zero());
    CHECK(seq.at(3) == parse("-1/16*(5*a0 + a4 + a2)"));
    CHECK(seq.at(3) == reference_constant(3));
}

TEST_CASE("linear centers have no obstructions") {
    for (const auto& sys : {PlanarSystem{y_(), -x_()}, PlanarSystem{-y_(), x_()}}) {
        auto seq = lyapunov_constants(sys, 9);
        REQUIRE(seq.entries.size() == 9);
        for (const auto& e : seq.entries) CHECK(e.value.is_zero());
    }
}

TEST_CASE("non-rotation linear parts are rejected") {
    CHECK_THROWS_AS(lyapunov_constants({x_(), y_()}, 3), lyapunov_error);
    CHECK_THROWS_AS(lyapunov_constants({-2 * y_(), x_()}, 3), lyapunov_error);
    CHECK_THROWS_AS(lyapunov_constants({y_() + 1, -x_()}, 3), lyapunov_error);
    CHECK_THROWS_AS(lyapunov_constants(quintic_family(), 0), std::invalid_argument);
}

TEST_CASE("return map oracle agrees with the first constant") {
    // over one turn the energy gain is -2 pi L3 r^6 to leading order
    const double r = 0.1;
    SUBCASE("a0 = 1") {
        double c = energy_gain({1, 0, 0, 0, 0, 0}, r) / (2 * M_PI * std::pow(r, 6));
        CHECK(c == doctest::Approx(5.0 / 16).epsilon(0.01));
        auto seq = lyapunov_constants(quintic_family().specialize(point({{0, 1}})), 3);
        CHECK(seq.at(3) == Rational(-5, 16));
    }
    SUBCASE("random parameter points") {
        auto& g = testing::rng();
        std::uniform_int_distribution<int> d(-3, 3);
        auto sym = lyapunov_constants(quintic_family(), 3);
        for (int trial = 0; trial < 6; ++trial) {
            std::array<double, 6> a;
            std::map<int, Rational> pt;
            for (int i = 0; i < 6; ++i) {
                a[i] = d(g);
                pt[var::a(i)] = static_cast<int>(a[i]);
            }
            double l3 = evaluate(sym.at(3), pt).constant_term().get_d();
            if (std::abs(l3) < 1e-9) continue;
            double c = energy_gain(a, r) / (2 * M_PI * std::pow(r, 6));
            CHECK(c == doctest::Approx(-l3).epsilon(0.02));
        }
    }
}

TEST_CASE("stored constants match modulo earlier ones") {
    auto seq = lyapunov_constants(quintic_family(), 9);
    for (int j : {5, 7, 9}) {
        auto m = match_modulo(seq.at(j), reference_constant(j), seq.odd_entries(j - 2));
        CHECK_MESSAGE(m.matches, "L" << j);
        CHECK(m.factor == 1);
    }
    // the published sign of one L7 term is off
    REQUIRE(reference_constant_has_correction(7));
    auto bad = match_modulo(seq.at(7), reference_constant(7, false), seq.odd_entries(5));
    CHECK_FALSE(bad.matches);
}

TEST_CASE("degrees of the higher constants") {
    auto seq = lyapunov_constants(quintic_family(), 15);
    for (int k = 1; k <= 7; ++k) CHECK(seq.at(2 * k + 1).total_degree() == k);
    for (int k = 1; k <= 7; ++k) CHECK(seq.at(2 * k).is_zero());
}

TEST_CASE("L17 vanishes modulo the earlier constants") {
    auto res = compute_lyapunov(quintic_family(), 17, true);
    CHECK(res.sequence.reduced);
    CHECK(res.sequence.at(17).is_zero());
    CHECK_FALSE(res.sequence.at(15).is_zero());
    auto raw = lyapunov_constants(quintic_family(), 17);
    CHECK_FALSE(raw.at(17).is_zero());
    CHECK(is_member(raw.at(17), groebner(raw.odd_entries(15))));
}

TEST_CASE("derivative identity holds after expansion") {
    CHECK(verify_derivative_identity(compute_lyapunov(quintic_family(), 7)));
    auto& g = testing::rng();
    for (int trial = 0; trial < 5; ++trial) {
        PlanarSystem s{-y_(), x_()};
        for (int k = 2; k <= 3; ++k) {
            s.P += homogeneous_component(testing::random_poly(g, {var::x, var::y}, 3, k), k);
            s.Q += homogeneous_component(testing::random_poly(g, {var::x, var::y}, 3, k), k);
        }
        auto r = compute_lyapunov(s, 5);
        CHECK(verify_derivative_identity(r));
        // the identity is sensitive to a wrong constant
        r.sequence.entries[2].value += MultiPoly(1);
        CHECK_FALSE(verify_derivative_identity(r));
    }
}

TEST_CASE("odd-degree systems are uniquely solvable on random instances") {
    auto& g = testing::rng();
    for (int trial = 0; trial < 20; ++trial) {
        std::map<int, Rational> pt;
        for (int i = 0; i < 6; ++i) pt[var::a(i)] = testing::random_rational(g);
        CHECK_NOTHROW(lyapunov_constants(quintic_family().specialize(pt), 9));
    }
}

TEST_CASE("reversibility") {
    PlanarSystem center{y_(), parse("-x + a1*x*y^4 + a3*x^3*y^2 + a5*x^5")};
    CHECK(reversibility_test(center) == Reversibility::XAxis);
    CHECK(reversibility_test({y_(), parse("-x + 3*y^5")}) == Reversibility::None);
    CHECK(reversibility_test({y_(), -x_()}) == Reversibility::XAxis);
    CHECK(reversibility_test({parse("y + x^2"), parse("-x")}) == Reversibility::YAxis);
    CHECK(to_string(Reversibility::None) == "none");
}

TEST_CASE("reversible systems have vanishing constants") {
    for (const auto& e : lyapunov_constants(PlanarSystem{y_(), parse("-x + a1*x*y^4 + a3*x^3*y^2 + a5*x^5")}, 9).entries)
        CHECK(e.value.is_zero());
    auto& g = testing::rng();
    for (int trial = 0; trial < 10; ++trial) {
        // P odd in y, Q even in y
        MultiPoly P = -y_(), Q = x_();
        MultiPoly extra = testing::random_poly(g, {var::x, var::y}, 6, 3);
        for (const auto& [m, c] : extra.terms()) {
            if (m.xy_degree() < 2) continue;
            MultiPoly t = MultiPoly::monomial(m, c);
            if (m.e[var::y] % 2 == 1)
                P += t;
            else
                Q += t;
        }
        PlanarSystem s{P, Q};
        REQUIRE(reversibility_test(s) == Reversibility::XAxis);
        for (const auto& e : lyapunov_constants(s, 9).entries) CHECK(e.value.is_zero());
    }
}

TEST_CASE("Bautin inclusion of even constants") {
    auto seq = lyapunov_constants(quintic_family(), 9);
    auto rep = bautin_inclusion_check(seq);
    CHECK(rep.items.size() == 4);
    CHECK(rep.ok());
    CHECK(bautin_inclusion_check(lyapunov_constants({y_(), -x_()}, 9)).ok());
    CHECK(bautin_inclusion_check(lyapunov_constants(quintic_family().specialize(point({{1, 1}})), 9)).ok());
    // quadratic systems have a nonzero L2 that no earlier odd constant covers
    auto quad = lyapunov_constants({parse("-y + x^2 + x*y"), parse("x + y^2")}, 4);
    if (!quad.at(2).is_zero()) CHECK_FALSE(bautin_inclusion_check(quad).ok());
}

TEST_CASE("weak focus order") {
    auto q = quintic_family();
    auto wf = weak_focus_order(q.specialize(point({{0, 1}})), 9);
    CHECK(wf.order == 3);
    CHECK(wf.value == Rational(-5, 16));
    CHECK(weak_focus_order(q.specialize(point({{3, -1}})), 9).center_candidate);
    // L3 vanishes here; the order is the first constant that survives evaluation
    auto pt = point({{4, 1}, {2, -1}});
    auto deeper = weak_focus_order(q.specialize(pt), 9);
    auto sym = lyapunov_constants(q, 9);
    CHECK(evaluate(sym.at(3), pt).is_zero());
    int expected = 0;
    for (const auto& e : sym.entries)
        if (!evaluate(e.value, pt).is_zero()) {
            expected = e.index;
            break;
        }
    CHECK(expected > 3);
    CHECK(deeper.order == expected);
    CHECK(deeper.value == evaluate(sym.at(expected), pt).constant_term());
    CHECK_THROWS_AS(weak_focus_order(q, 3), std::invalid_argument);
}
