#include "qc/globalcenter.hpp"
#include "qc/parse.hpp"
#include "qc/portrait.hpp"

#include <doctest.h>

#include <cmath>

using namespace qc;

namespace {

PlanarSystem family(const std::string& s) { return FamilyParameters::parse(s).system(); }

const PlanarSystem kLinear{parse("y"), parse("-x")};

double oracle_step(const OrbitTrace& t) { return t.asinh_length / static_cast<double>(t.steps) / 10; }

int count(const std::string& s, const std::string& what) {
    int n = 0;
    for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("linear center closes") {
    for (double r : {0.5, 1.0, 3.0}) {
        auto t = integrate(kLinear, {r, 0});
        CHECK(t.verdict == OrbitVerdict::Closed);
        CHECK(t.defect < 1e-9);
        CHECK(t.time == doctest::Approx(2 * M_PI).epsilon(1e-6));
        for (const auto& p : t.points) CHECK(std::hypot(p.first, p.second) == doctest::Approx(r).epsilon(1e-8));
    }
    // off-section seed: two crossings after the first revolution
    auto t = integrate(kLinear, {0, 2});
    CHECK(t.verdict == OrbitVerdict::Closed);
    CHECK(t.crossings.front() == doctest::Approx(2.0));
    CHECK_THROWS(integrate(kLinear, {0, 0}));
    CHECK_THROWS(integrate(family("a3=-1"), {1, 0}, IntegrationSpec{.tolerance = -1}));
    CHECK_THROWS(integrate(quintic_family(), {1, 0}));
}

TEST_CASE("global center orbits close, including huge excursions") {
    auto sys = family("a3=-1,a5=-1");
    for (double r : {1.0, 5.0, 10.0}) {
        CAPTURE(r);
        auto t = integrate(sys, {r, 0});
        CHECK(t.verdict == OrbitVerdict::Closed);
        CHECK(t.defect < 1e-6);
        // |y| peaks near exp(x0^4 / 4)
        if (r > 1) CHECK(t.max_log10_norm == doctest::Approx(std::pow(r, 4) / 4 / std::log(10)).epsilon(0.02));
        IntegrationSpec half;
        half.tolerance = config().integration_tolerance / 2;
        CHECK(integrate(sys, {r, 0}, half).verdict == OrbitVerdict::Closed);
        if (r < 10) {
            auto f = integrate_fixed_step(sys, {r, 0}, oracle_step(t), 20000000);
            CHECK(f.verdict == OrbitVerdict::Closed);
        }
    }
}

TEST_CASE("escape") {
    for (auto [params, seed] : {std::pair{"a1=1,a3=-1,a5=-1", Point2{1, 3}}, std::pair{"a1=-1,a3=-1,a5=-1", Point2{3, 0}},
                                std::pair{"a3=2", Point2{3, 0}}}) {
        CAPTURE(params);
        auto sys = family(params);
        auto t = integrate(sys, seed);
        CHECK(t.verdict == OrbitVerdict::Escaped);
        CHECK(t.threshold_exceeded);
        CHECK(t.escape_radius > 1e3 * std::hypot(seed.first, seed.second));
        IntegrationSpec half;
        half.tolerance = config().integration_tolerance / 2;
        CHECK(integrate(sys, seed, half).verdict == OrbitVerdict::Escaped);
        CHECK(integrate_fixed_step(sys, seed, oracle_step(t), 20000000).verdict == OrbitVerdict::Escaped);
    }
}

TEST_CASE("a14 > 0: the orbit through (3,0) is closed by double reversibility") {
    // y' = x g(x, y) with g even: reversible about both axes, so an orbit from the positive x-axis
    // that reaches x = 0 closes
    auto sys = family("a1=1,a3=-1,a5=-1");
    std::vector<double> hits;
    for (double tol : {1e-9, 1e-11, 1e-13}) {
        IntegrationSpec s;
        s.tolerance = tol;
        s.max_steps = 20000;
        s.max_points = 1000000;
        auto t = integrate(sys, {3, 0}, s);
        for (std::size_t i = 1; i < t.points.size(); ++i)
            if (t.points[i].first <= 0) {
                auto a = t.points[i - 1], b = t.points[i];
                hits.push_back(a.second + (b.second - a.second) * (0 - a.first) / (b.first - a.first));
                break;
            }
    }
    REQUIRE(hits.size() == 3);
    for (double y : hits) CHECK(y == doctest::Approx(-1.15275).epsilon(1e-3));
}

TEST_CASE("reversible family: mirror seeds give mirror orbits") {
    auto sys = family("a3=-1,a5=-2");
    auto up = integrate(sys, {1, 0.5}), down = integrate(sys, {1, -0.5});
    REQUIRE(up.verdict == OrbitVerdict::Closed);
    REQUIRE(down.verdict == OrbitVerdict::Closed);
    CHECK(up.crossings.back() == doctest::Approx(down.crossings.back()).epsilon(1e-8));
    // a focus does not close; L3 < 0 belongs to the time-reversed (counterclockwise) field, so
    // forward orbits spiral out
    auto focus = integrate(family("a0=1"), {0.3, 0}, IntegrationSpec{.max_revolutions = 5});
    CHECK(focus.verdict == OrbitVerdict::Budget);
    for (std::size_t i = 1; i < focus.crossings.size(); ++i) CHECK(focus.crossings[i] > focus.crossings[i - 1]);
}

TEST_CASE("disc rendering") {
    auto p = to_disc({3, 4});
    CHECK(p.first == doctest::Approx(0.5));
    CHECK(p.second == doctest::Approx(4.0 / 6));

    RenderSpec spec;
    spec.seeds = parse_seeds("0.2,0;0.4,0;0.6,0;0.8,0;1,0");
    spec.title = "linear center";
    std::vector<OrbitTrace> traces;
    std::string svg = render_disc(kLinear, spec, &traces);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("width=\"1000\" height=\"1000\"") != std::string::npos);
    CHECK(count(svg, "class=\"orbit\"") == 5);
    CHECK(count(svg, "data-verdict=\"closed\"") == 5);
    CHECK(count(svg, "class=\"equilibrium\"") == 1);
    REQUIRE(traces.size() == 5);
    // concentric: each disc radius stays constant along its orbit and grows with the seed
    double prev = 0;
    for (const auto& t : traces) {
        double r0 = std::hypot(t.disc.front().first, t.disc.front().second);
        for (const auto& d : t.disc) CHECK(std::hypot(d.first, d.second) == doctest::Approx(r0).epsilon(1e-7));
        CHECK(r0 > prev);
        prev = r0;
    }
    CHECK(render_disc(kLinear, spec) == svg);

    // case c3: nested closed curves filling the disc
    spec.seeds = parse_seeds("0.5,0;1,0;1.5,0;2,0;3,0");
    traces.clear();
    svg = render_disc(family("a3=-1,a5=-1"), spec, &traces);
    CHECK(count(svg, "data-verdict=\"closed\"") == 5);
    CHECK(count(svg, "infinite-equilibrium") >= 2);
    double reach = 0;
    for (const auto& t : traces)
        for (const auto& d : t.disc) reach = std::max(reach, std::hypot(d.first, d.second));
    CHECK(reach > 0.99);

    // case c2: an orbit meets the boundary circle
    spec.seeds = parse_seeds("0.5,0;3,0");
    traces.clear();
    svg = render_disc(family("a3=1"), spec, &traces);
    CHECK(count(svg, "data-verdict=\"escaped\"") >= 1);
    bool boundary = false;
    for (const auto& t : traces)
        boundary = boundary || (t.verdict == OrbitVerdict::Escaped &&
                                std::hypot(t.disc.back().first, t.disc.back().second) > 0.999);
    CHECK(boundary);

    CHECK_THROWS(parse_seeds("1;2"));
    CHECK_THROWS(parse_seeds(""));
    CHECK_THROWS(render_disc(kLinear, RenderSpec{}));
}
