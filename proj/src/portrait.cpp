#include "qc/portrait.hpp"

#include "qc/compactify.hpp"
#include "qc/globalcenter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qc {

std::string to_string(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::Closed: return "closed";
        case OrbitVerdict::Escaped: return "escaped";
        case OrbitVerdict::Budget: return "budget";
        case OrbitVerdict::Underflow: return "underflow";
    }
    return "?";
}

NumericField::NumericField(const PlanarSystem& sys) {
    if (!sys.parameters().empty()) throw std::invalid_argument("portrait needs numeric parameters");
    auto load = [](const MultiPoly& p, auto& out) {
        for (const auto& [m, c] : p.terms()) {
            long double v = static_cast<long double>(c.get_num().get_d()) / c.get_den().get_d();
            out.push_back({v, {static_cast<int>(m.e[var::x]), static_cast<int>(m.e[var::y])}});
        }
    };
    load(sys.P, P);
    load(sys.Q, Q);
}

std::pair<long double, long double> NumericField::operator()(long double x, long double y) const {
    auto eval = [&](const auto& terms) {
        long double s = 0;
        for (const auto& [c, e] : terms) {
            long double t = c;
            for (int i = 0; i < e.first; ++i) t *= x;
            for (int i = 0; i < e.second; ++i) t *= y;
            s += t;
        }
        return s;
    };
    return {eval(P), eval(Q)};
}

Point2 NumericField::operator()(const Point2& p) const {
    auto [u, v] = (*this)(p.first, p.second);
    return {static_cast<double>(u), static_cast<double>(v)};
}

namespace {

using L = long double;

struct V2 {
    L x = 0, y = 0;
};

V2 operator+(const V2& a, const V2& b) { return {a.x + b.x, a.y + b.y}; }
V2 operator*(L h, const V2& a) { return {h * a.x, h * a.y}; }

L norm(const V2& p) { return std::hypot(p.x, p.y); }
double norm(const Point2& p) { return std::hypot(p.first, p.second); }

using Field = std::function<V2(const V2&)>;
using Step = std::function<V2(const V2&, L)>;

struct DopriResult {
    V2 u, err;
};

DopriResult dopri_step(const Field& f, const V2& u, L h) {
    V2 k1 = f(u);
    V2 k2 = f(u + h * ((L(1) / 5) * k1));
    V2 k3 = f(u + h * ((L(3) / 40) * k1 + (L(9) / 40) * k2));
    V2 k4 = f(u + h * ((L(44) / 45) * k1 + (L(-56) / 15) * k2 + (L(32) / 9) * k3));
    V2 k5 = f(u + h * ((L(19372) / 6561) * k1 + (L(-25360) / 2187) * k2 + (L(64448) / 6561) * k3 +
                       (L(-212) / 729) * k4));
    V2 k6 = f(u + h * ((L(9017) / 3168) * k1 + (L(-355) / 33) * k2 + (L(46732) / 5247) * k3 + (L(49) / 176) * k4 +
                       (L(-5103) / 18656) * k5));
    V2 v = u + h * ((L(35) / 384) * k1 + (L(500) / 1113) * k3 + (L(125) / 192) * k4 + (L(-2187) / 6784) * k5 +
                    (L(11) / 84) * k6);
    V2 k7 = f(v);
    V2 e = h * ((L(71) / 57600) * k1 + (L(-71) / 16695) * k3 + (L(71) / 1920) * k4 + (L(-17253) / 339200) * k5 +
                (L(22) / 525) * k6 + (L(-1) / 40) * k7);
    return {v, e};
}

V2 rk4_step(const Field& f, const V2& u, L h) {
    V2 k1 = f(u);
    V2 k2 = f(u + (h / 2) * k1);
    V2 k3 = f(u + (h / 2) * k2);
    V2 k4 = f(u + h * k3);
    return u + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

double saturate(L v) {
    const L m = std::numeric_limits<double>::max();
    return static_cast<double>(std::clamp(v, -m, m));
}

// polyline decimation: keep every stride-th point, doubling the stride when full
struct Recorder {
    std::size_t cap;
    OrbitTrace& t;
    std::size_t stride = 1, count = 0;
    void add(const V2& p, bool force = false) {
        if (!(force || count++ % stride == 0)) return;
        t.points.push_back({saturate(p.x), saturate(p.y)});
        L s = 1 + norm(p);
        t.disc.push_back({static_cast<double>(p.x / s), static_cast<double>(p.y / s)});
        if (t.points.size() >= 2 * cap) {
            for (auto* v : {&t.points, &t.disc}) {
                std::vector<Point2> kept;
                for (std::size_t i = 0; i < v->size(); i += 2) kept.push_back((*v)[i]);
                v->swap(kept);
            }
            stride *= 2;
        }
    }
    void finish(const V2& p) {
        Point2 q{saturate(p.x), saturate(p.y)};
        if (t.points.empty() || t.points.back() != q) add(p, true);
    }
};

// section y = 0, x > 0 in the rotation sense fixed at the seed; the state is mapped to (x, y) by to_xy
struct Section {
    int direction = 0;  // sign of dy at the recorded crossings
    double closure;
    int max_revolutions;
    OrbitTrace& trace;
    std::function<V2(const V2&)> to_xy;
    L tau = 0;  // step fraction of the last crossing

    void seed(const V2& s, const V2& f) {
        if (s.y == 0 && s.x > 0 && f.y != 0) {
            direction = f.y > 0 ? 1 : -1;
            trace.crossings.push_back(static_cast<double>(to_xy(s).x));
        }
    }

    // true when the orbit closed or the revolution budget ran out
    bool check(const V2& u0, const V2& u1, L h, const Step& step) {
        if (!(u0.y != 0 && (u0.y > 0) != (u1.y > 0))) return false;
        if (to_xy(u0).x <= 0 && to_xy(u1).x <= 0) return false;
        int d = u1.y > u0.y ? 1 : -1;
        if (direction != 0 && d != direction) return false;
        L lo = 0, hi = h;
        for (int i = 0; i < 64; ++i) {
            L mid = (lo + hi) / 2;
            V2 m = step(u0, mid);
            if ((m.y > 0) == (u0.y > 0) && m.y != 0) lo = mid;
            else hi = mid;
        }
        V2 c = to_xy(step(u0, hi));
        if (c.x <= 0) return false;
        direction = d;
        tau = hi;
        trace.crossings.push_back(saturate(c.x));
        std::size_t n = trace.crossings.size();
        if (n >= 2) {
            double a = trace.crossings[n - 2], b = trace.crossings[n - 1];
            double gap = std::fabs(b - a) / a;
            trace.defect = gap;
            if (gap < closure) {
                trace.verdict = OrbitVerdict::Closed;
                return true;
            }
        }
        if (static_cast<int>(n) > max_revolutions) {
            trace.verdict = OrbitVerdict::Budget;
            return true;
        }
        return false;
    }
};

struct Excursion {
    OrbitTrace& t;
    L threshold, cap;
    // true when the orbit passed the cap
    bool update(const V2& xy) {
        L n = norm(xy);
        if (n > 0) t.max_log10_norm = std::max(t.max_log10_norm, static_cast<double>(std::log10(n)));
        if (n > threshold) t.threshold_exceeded = true;
        if (n > cap || !std::isfinite(n)) {
            t.verdict = OrbitVerdict::Escaped;
            t.escape_radius = saturate(n);
            return true;
        }
        return false;
    }
    void underflow(const V2& xy) {
        if (t.threshold_exceeded && norm(xy) > threshold) {
            t.verdict = OrbitVerdict::Escaped;
            t.escape_radius = saturate(norm(xy));
        } else {
            t.verdict = OrbitVerdict::Underflow;
        }
    }
};

L asinh_dist(const V2& a, const V2& b) { return std::hypot(std::asinh(b.x) - std::asinh(a.x), std::asinh(b.y) - std::asinh(a.y)); }

}  // namespace

OrbitTrace integrate(const PlanarSystem& sys, const Point2& seed, const IntegrationSpec& spec) {
    if (spec.tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
    NumericField nf(sys);
    Field f = [&](const V2& u) {
        auto [a, b] = nf(u.x, u.y);
        return V2{a, b};
    };
    OrbitTrace t;
    V2 u{seed.first, seed.second};
    V2 fs = f(u);
    if (norm(fs) == 0) throw std::invalid_argument("seed is an equilibrium");
    L seed_norm = std::max<L>(norm(u), 1e-300L);
    Recorder rec{spec.max_points, t};
    rec.add(u, true);
    Section sec{0, spec.closure_tolerance, spec.max_revolutions, t, [](const V2& v) { return v; }};
    sec.seed(u, fs);
    Excursion ex{t, spec.escape_factor * seed_norm, spec.escape_cap};
    ex.update(u);
    Step step = [&](const V2& v, L h) { return dopri_step(f, v, h).u; };

    L h = 1e-3L * (1 + norm(u)) / norm(fs);
    L tol = spec.tolerance;
    const L tiny = std::numeric_limits<L>::min() * 1e20L;
    bool done = false;
    while (!done && t.steps < spec.max_steps) {
        auto r = dopri_step(f, u, h);
        auto sc = [&](L a, L b) { return tol + tol * std::max(std::fabs(a), std::fabs(b)); };
        L e1 = r.err.x / sc(u.x, r.u.x), e2 = r.err.y / sc(u.y, r.u.y);
        L err = std::sqrt((e1 * e1 + e2 * e2) / 2);
        if (!std::isfinite(err) || !std::isfinite(r.u.x) || !std::isfinite(r.u.y)) err = 1e10L;
        L factor = err == 0 ? 5 : std::clamp(0.9L * std::pow(err, -0.2L), 0.2L, 5.0L);
        if (err > 1) {
            h *= factor;
            if (std::fabs(h) < tiny) {
                ex.underflow(u);
                done = true;
            }
            continue;
        }
        ++t.steps;
        t.time += static_cast<double>(h);
        V2 prev = u;
        u = r.u;
        t.asinh_length += static_cast<double>(asinh_dist(prev, u));
        rec.add(u);
        done = sec.check(prev, u, h, step) || ex.update(u);
        if (done && t.verdict == OrbitVerdict::Closed) t.time -= static_cast<double>(h - sec.tau);
        h *= factor;
    }
    rec.finish(u);
    return t;
}

OrbitTrace integrate_fixed_step(const PlanarSystem& sys, const Point2& seed, double step, std::uint64_t max_steps,
                                const IntegrationSpec& spec) {
    if (step <= 0) throw std::invalid_argument("step must be positive");
    NumericField nf(sys);
    // state (asinh x, asinh y), moving at unit speed: same orbits, bounded velocity
    auto xy = [](const V2& s) { return V2{std::sinh(s.x), std::sinh(s.y)}; };
    Field g = [&](const V2& s) {
        V2 p = xy(s);
        auto [a, b] = nf(p.x, p.y);
        V2 v{a / std::sqrt(1 + p.x * p.x), b / std::sqrt(1 + p.y * p.y)};
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) return V2{0, 0};
        L n = norm(v);
        return n == 0 ? V2{0, 0} : V2{v.x / n, v.y / n};
    };
    OrbitTrace t;
    V2 s{std::asinh(static_cast<L>(seed.first)), std::asinh(static_cast<L>(seed.second))};
    auto [fx, fy] = nf(seed.first, seed.second);
    if (fx == 0 && fy == 0) throw std::invalid_argument("seed is an equilibrium");
    L seed_norm = std::max<L>(std::hypot(static_cast<L>(seed.first), static_cast<L>(seed.second)), 1e-300L);
    Recorder rec{spec.max_points, t};
    rec.add(xy(s), true);
    Section sec{0, spec.closure_tolerance, spec.max_revolutions, t, xy};
    sec.seed(s, V2{fx, fy});
    Excursion ex{t, spec.escape_factor * seed_norm, spec.escape_cap};
    Step sub = [&](const V2& v, L h) { return rk4_step(g, v, h); };
    while (t.steps < max_steps) {
        V2 prev = s;
        s = rk4_step(g, s, step);
        ++t.steps;
        t.time += step;
        t.asinh_length += step;
        V2 p = xy(s);
        rec.add(p);
        if (sec.check(prev, s, step, sub) || ex.update(p)) break;
        if (norm(g(s)) == 0) {
            ex.underflow(p);
            break;
        }
    }
    rec.finish(xy(s));
    return t;
}

Point2 to_disc(const Point2& p) {
    double s = 1 + norm(p);
    return {p.first / s, p.second / s};
}

namespace {

constexpr double kCenter = 500, kRadius = 450;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string screen(const Point2& d) { return fmt(kCenter + kRadius * d.first) + "," + fmt(kCenter - kRadius * d.second); }

std::string escape_xml(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '<') r += "&lt;";
        else if (c == '>') r += "&gt;";
        else if (c == '&') r += "&amp;";
        else if (c == '"') r += "&quot;";
        else r += c;
    }
    return r;
}

}  // namespace

std::string render_disc(const PlanarSystem& sys, const RenderSpec& spec, std::vector<OrbitTrace>* traces) {
    if (spec.seeds.empty()) throw std::invalid_argument("at least one seed is required");
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
    if (!spec.title.empty()) o << "<title>" << escape_xml(spec.title) << "</title>\n";
    o << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n"
      << "<circle class=\"infinity\" cx=\"500\" cy=\"500\" r=\"450\" fill=\"none\" stroke=\"black\" "
         "stroke-width=\"2\"/>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
    for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
        OrbitTrace t = integrate(sys, spec.seeds[i], spec.integration);
        o << "<polyline class=\"orbit\" data-seed=\"" << fmt(spec.seeds[i].first) << "," << fmt(spec.seeds[i].second)
          << "\" data-verdict=\"" << to_string(t.verdict) << "\" fill=\"none\" stroke=\"" << colors[i % 7]
          << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < t.disc.size(); ++j) o << (j ? " " : "") << screen(t.disc[j]);
        if (t.verdict == OrbitVerdict::Escaped) {
            // the orbit reaches the boundary circle in the direction it escaped
            const Point2& e = t.disc.back();
            double n = norm(e);
            o << " " << screen({e.first / n, e.second / n});
        } else if (t.verdict == OrbitVerdict::Closed) {
            o << " " << screen(t.disc.front());
        }
        o << "\"/>\n";
        if (traces) traces->push_back(std::move(t));
    }
    // equilibria: finite ones, then infinite ones and their antipodes on the circle
    auto dot = [&](const Point2& d, const char* cls) {
        o << "<circle class=\"" << cls << "\" cx=\"" << fmt(kCenter + kRadius * d.first) << "\" cy=\""
          << fmt(kCenter - kRadius * d.second) << "\" r=\"5\" fill=\"black\"/>\n";
    };
    auto fin = finite_equilibria(sys);
    for (const auto& p : fin.points) dot(to_disc({p.x.approx(), p.y.approx()}), "equilibrium");
    auto inf = infinite_equilibria(sys);
    for (const auto& p : inf.points) {
        Point2 dir = p.chart == Chart::U1 ? Point2{1, p.x.approx()} : Point2{p.x.approx(), 1};
        double n = norm(dir);
        dot({dir.first / n, dir.second / n}, "infinite-equilibrium");
        dot({-dir.first / n, -dir.second / n}, "infinite-equilibrium");
    }
    o << "</svg>\n";
    return o.str();
}

std::vector<Point2> parse_seeds(const std::string& text) {
    std::vector<Point2> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        auto comma = item.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("seed '" + item + "' is not x,y");
        std::size_t used = 0;
        std::string xs = item.substr(0, comma), ys = item.substr(comma + 1);
        double x = std::stod(xs, &used);
        if (xs.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("bad seed " + item);
        double y = std::stod(ys, &used);
        if (ys.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("bad seed " + item);
        out.push_back({x, y});
    }
    if (out.empty()) throw std::invalid_argument("no seeds");
    return out;
}

nlohmann::json to_json(const OrbitTrace& t, bool with_points) {
    nlohmann::json j;
    j["verdict"] = to_string(t.verdict);
    j["crossings"] = t.crossings;
    j["defect"] = t.defect;
    j["steps"] = t.steps;
    j["time"] = t.time;
    if (t.verdict == OrbitVerdict::Escaped) j["escape_radius"] = t.escape_radius;
    if (with_points) {
        j["points"] = nlohmann::json::array();
        for (const auto& p : t.points) j["points"].push_back({p.first, p.second});
    }
    return j;
}

}  // namespace qc
