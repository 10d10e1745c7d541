#pragma once

#include "qc/system.hpp"
#include "qc/upoly.hpp"

#include <string>
#include <vector>

namespace qc {

enum class Chart { U1, U2, V1, V2 };
std::string to_string(Chart c);
Chart chart_from_string(const std::string& s);

struct LocalChartSystem {
    Chart chart = Chart::U1;
    MultiPoly P, Q;
    std::int64_t source_degree = 0;
    std::vector<std::string> log;

    PlanarSystem system() const { return {P, Q}; }
};

// U1: (y^n (Q~ - x P~), -y^{n+1} P~) with P~ = P(1/y, x/y); U2 swaps the roles of P and Q.
// V charts are the U charts times (-1)^{n-1}.
LocalChartSystem chart_system(const PlanarSystem& sys, Chart chart);

struct InfinitePoint {
    Chart chart;
    RealRoot x;  // the point is (x, 0)
};

struct InfiniteEquilibria {
    bool line_at_infinity = false;
    std::vector<InfinitePoint> points;
};

// zeros of the U1 field on y = 0, then the origin of U2 when it is an equilibrium;
// the system must have numeric coefficients
InfiniteEquilibria infinite_equilibria(const PlanarSystem& sys);

}  // namespace qc
