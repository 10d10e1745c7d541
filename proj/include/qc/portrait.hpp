#pragma once

#include "qc/config.hpp"
#include "qc/system.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace qc {

using Point2 = std::pair<double, double>;

struct IntegrationSpec {
    double tolerance = config().integration_tolerance;
    std::uint64_t max_steps = config().integration_max_steps;
    double escape_factor = 1e3;        // excursion threshold, relative to the seed norm
    long double escape_cap = 1e1200L;  // escaped once the norm exceeds this
    double closure_tolerance = 1e-6;   // relative gap between successive section crossings
    int max_revolutions = 200;
    std::size_t max_points = 4000;     // polyline samples kept for rendering
};

enum class OrbitVerdict { Closed, Escaped, Budget, Underflow };
std::string to_string(OrbitVerdict v);

// Closed orbits of the family can pass extremely far out (|y| ~ exp(x0^4/4) for a3 = a5 = -1), so
// crossing escape_factor * seed norm alone is not an escape: the verdict needs the orbit to pass
// escape_cap, or to blow up (step underflow) after crossing the threshold.
struct OrbitTrace {
    std::vector<Point2> points;     // saturated at +-DBL_MAX
    std::vector<Point2> disc;       // the same samples mapped to the unit disc
    std::vector<double> crossings;  // radii on y = 0, x > 0, one per revolution
    OrbitVerdict verdict = OrbitVerdict::Budget;
    double defect = 0;              // relative gap of the closing pair
    double escape_radius = 0;       // norm at the escape decision, saturated
    bool threshold_exceeded = false;
    double max_log10_norm = 0;
    double asinh_length = 0;        // path length in (asinh x, asinh y)
    std::uint64_t steps = 0;
    double time = 0;
};

// numeric system: P, Q in x and y only
struct NumericField {
    std::vector<std::pair<long double, std::pair<int, int>>> P, Q;
    explicit NumericField(const PlanarSystem& sys);
    Point2 operator()(const Point2& p) const;
    std::pair<long double, long double> operator()(long double x, long double y) const;
};

// adaptive Dormand-Prince 5(4) with mixed absolute/relative error control
OrbitTrace integrate(const PlanarSystem& sys, const Point2& seed, const IntegrationSpec& spec = {});

// classical RK4 with a fixed step in the unit-speed parametrization of (asinh x, asinh y);
// an independent check of integrate's verdicts
OrbitTrace integrate_fixed_step(const PlanarSystem& sys, const Point2& seed, double step, std::uint64_t max_steps,
                                const IntegrationSpec& spec = {});

struct RenderSpec {
    std::vector<Point2> seeds;
    IntegrationSpec integration;
    std::string title;
};

// (x, y) -> (x, y) / (1 + |(x, y)|)
Point2 to_disc(const Point2& p);

// SVG 1.1 on a 1000x1000 canvas; traces receives the integrated orbits when non-null
std::string render_disc(const PlanarSystem& sys, const RenderSpec& spec, std::vector<OrbitTrace>* traces = nullptr);

std::vector<Point2> parse_seeds(const std::string& text);  // "1,0;2,0.5"

nlohmann::json to_json(const OrbitTrace& t, bool with_points = false);

}  // namespace qc
