#include "qc/compactify.hpp"

#include <stdexcept>

namespace qc {

std::string to_string(Chart c) {
    switch (c) {
        case Chart::U1: return "U1";
        case Chart::U2: return "U2";
        case Chart::V1: return "V1";
        case Chart::V2: return "V2";
    }
    return "U1";
}

Chart chart_from_string(const std::string& s) {
    if (s == "U1") return Chart::U1;
    if (s == "U2") return Chart::U2;
    if (s == "V1") return Chart::V1;
    if (s == "V2") return Chart::V2;
    throw std::invalid_argument("unknown chart '" + s + "'");
}

namespace {

// y^n F(1/y, x/y) when swap is false, y^n F(x/y, 1/y) when it is true
MultiPoly homogenized(const MultiPoly& f, std::int64_t n, bool swap) {
    std::vector<MultiPoly::Term> terms;
    for (const auto& [m, c] : f.terms()) {
        Mono t = m;
        std::int64_t i = m.e[var::x], j = m.e[var::y];
        t.e[var::x] = swap ? i : j;
        t.e[var::y] = n - i - j;
        terms.emplace_back(t, c);
    }
    return MultiPoly::from_terms(std::move(terms));
}

}  // namespace

LocalChartSystem chart_system(const PlanarSystem& sys, Chart chart) {
    const std::int64_t n = sys.degree();
    if (n < 1) throw std::invalid_argument("chart_system needs a system of degree at least 1");
    const bool second = chart == Chart::U2 || chart == Chart::V2;
    MultiPoly Pt = homogenized(sys.P, n, second), Qt = homogenized(sys.Q, n, second);
    LocalChartSystem out;
    out.chart = chart;
    out.source_degree = n;
    if (!second) {
        out.P = Qt - x_() * Pt;
        out.Q = -(y_() * Pt);
        out.log.push_back("(X, Y) = (1/y, x/y), time scaled by y^" + std::to_string(n - 1));
    } else {
        out.P = Pt - x_() * Qt;
        out.Q = -(y_() * Qt);
        out.log.push_back("(X, Y) = (x/y, 1/y), time scaled by y^" + std::to_string(n - 1));
    }
    if (chart == Chart::V1 || chart == Chart::V2) {
        if ((n - 1) % 2 == 1) {
            out.P = -out.P;
            out.Q = -out.Q;
        }
        out.log.push_back("opposite chart: multiplied by (-1)^" + std::to_string(n - 1));
    }
    return out;
}

InfiniteEquilibria infinite_equilibria(const PlanarSystem& sys) {
    if (!sys.parameters().empty()) throw std::invalid_argument("infinite_equilibria needs numeric coefficients");
    InfiniteEquilibria out;
    auto u1 = chart_system(sys, Chart::U1);
    MultiPoly f = evaluate(u1.P, {{var::y, Rational(0)}});
    if (f.is_zero()) {
        out.line_at_infinity = true;
        return out;
    }
    if (!f.is_constant())
        for (auto& r : real_roots(f)) out.points.push_back({Chart::U1, r});
    auto u2 = chart_system(sys, Chart::U2);
    if (evaluate(u2.P, {{var::x, Rational(0)}, {var::y, Rational(0)}}).is_zero()) {
        RealRoot origin;
        origin.exact = true;
        origin.value = 0;
        origin.interval = {0, 0};
        origin.defining = UPoly::x();
        out.points.push_back({Chart::U2, origin});
    }
    return out;
}

}  // namespace qc
