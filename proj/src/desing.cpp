#include "qc/desing.hpp"

#include "qc/compactify.hpp"
#include "qc/parse.hpp"
#include "qc/reference.hpp"
#include "qc/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace qc {

// ---------------------------------------------------------------- symbolic part

CharacteristicForm characteristic_form(const PlanarSystem& sys) {
    if (!xy_coefficient(sys.P, 0, 0).is_zero() || !xy_coefficient(sys.Q, 0, 0).is_zero())
        throw desing_error("origin is not an equilibrium");
    std::int64_t kp = sys.P.xy_low_degree(), kq = sys.Q.xy_low_degree();
    if (kp < 0 && kq < 0) throw desing_error("zero vector field");
    CharacteristicForm cf;
    cf.k = kp < 0 ? kq : kq < 0 ? kp : std::min(kp, kq);
    cf.gamma = homogeneous_component(sys.P, cf.k) * y_() - homogeneous_component(sys.Q, cf.k) * x_();
    cf.all_directions = cf.gamma.is_zero();
    return cf;
}

std::string to_string(TransformKind k) {
    switch (k) {
    case TransformKind::VerticalBlowup: return "vertical_blowup";
    case TransformKind::HorizontalBlowup: return "horizontal_blowup";
    case TransformKind::Twist: return "twist";
    case TransformKind::Untwist: return "untwist";
    case TransformKind::TimeRescale: return "time_rescale";
    case TransformKind::Translate: return "translate";
    }
    return "?";
}

std::string TransformStep::str() const {
    if (kind == TransformKind::TimeRescale) return "time_rescale(" + std::to_string(power) + ")";
    if (kind == TransformKind::Translate) return "translate(" + dx.get_str() + "," + dy.get_str() + ")";
    return to_string(kind);
}

TransformStep vertical_blowup() { return {TransformKind::VerticalBlowup, 0, {}, {}}; }
TransformStep horizontal_blowup() { return {TransformKind::HorizontalBlowup, 0, {}, {}}; }
TransformStep twist() { return {TransformKind::Twist, 0, {}, {}}; }
TransformStep untwist() { return {TransformKind::Untwist, 0, {}, {}}; }
TransformStep time_rescale(int power) { return {TransformKind::TimeRescale, power, {}, {}}; }
TransformStep translate(const Rational& dx, const Rational& dy) { return {TransformKind::Translate, 0, dx, dy}; }

namespace {

Mono x_mono(int k) {
    Mono m;
    m.e[var::x] = k;
    return m;
}
Mono y_mono(int k) {
    Mono m;
    m.e[var::y] = k;
    return m;
}

MultiPoly div_exact(const MultiPoly& p, const Mono& m, const char* what) {
    try {
        return p.div_mono(m);
    } catch (const std::domain_error&) {
        throw desing_error(std::string(what) + ": division is not exact");
    }
}

}  // namespace

PlanarSystem transform(const PlanarSystem& sys, const TransformStep& step) {
    const MultiPoly X = x_(), Y = y_();
    switch (step.kind) {
    case TransformKind::VerticalBlowup: {
        std::map<int, MultiPoly> b{{var::y, X * Y}};
        MultiPoly P = substitute(sys.P, b), Q = substitute(sys.Q, b);
        return {P, div_exact(Q - Y * P, x_mono(1), "vertical blow-up")};
    }
    case TransformKind::HorizontalBlowup: {
        std::map<int, MultiPoly> b{{var::x, X * Y}};
        MultiPoly P = substitute(sys.P, b), Q = substitute(sys.Q, b);
        return {div_exact(P - X * Q, y_mono(1), "horizontal blow-up"), Q};
    }
    case TransformKind::Twist: {
        std::map<int, MultiPoly> b{{var::x, X - Y}};
        MultiPoly P = substitute(sys.P, b), Q = substitute(sys.Q, b);
        return {P + Q, Q};
    }
    case TransformKind::Untwist: {
        std::map<int, MultiPoly> b{{var::x, X + Y}};
        MultiPoly P = substitute(sys.P, b), Q = substitute(sys.Q, b);
        return {P - Q, Q};
    }
    case TransformKind::TimeRescale:
        if (step.power < 0) throw desing_error("negative rescale power");
        return {div_exact(sys.P, x_mono(step.power), "time rescale"),
                div_exact(sys.Q, x_mono(step.power), "time rescale")};
    case TransformKind::Translate: {
        std::map<int, MultiPoly> b{{var::x, X + MultiPoly(step.dx)}, {var::y, Y + MultiPoly(step.dy)}};
        return {substitute(sys.P, b), substitute(sys.Q, b)};
    }
    }
    throw desing_error("unknown transform");
}

PlanarSystem replay(const PlanarSystem& sys, const std::vector<TransformStep>& log) {
    PlanarSystem s = sys;
    for (const auto& st : log) s = transform(s, st);
    return s;
}

int max_rescale_power(const PlanarSystem& sys) {
    std::int64_t p = -1;
    for (const MultiPoly* f : {&sys.P, &sys.Q})
        for (const auto& [m, c] : f->terms()) p = p < 0 ? m.e[var::x] : std::min(p, m.e[var::x]);
    return p < 0 ? 0 : static_cast<int>(p);
}

TransformStep parse_step(const std::string& text) {
    auto arg = [&](const std::string& head) {
        if (text.rfind(head + "(", 0) != 0 || text.back() != ')') return std::string();
        return text.substr(head.size() + 1, text.size() - head.size() - 2);
    };
    if (text == "vertical_blowup") return vertical_blowup();
    if (text == "horizontal_blowup") return horizontal_blowup();
    if (text == "twist") return twist();
    if (text == "untwist") return untwist();
    if (auto a = arg("time_rescale"); !a.empty()) return time_rescale(std::stoi(a));
    if (auto a = arg("translate"); !a.empty()) {
        auto comma = a.find(',');
        if (comma == std::string::npos) throw desing_error("bad translate step: " + text);
        return translate(parse_rational(a.substr(0, comma)), parse_rational(a.substr(comma + 1)));
    }
    throw desing_error("unknown transform step: " + text);
}

PlanarSystem center_system() {
    return quintic_family().specialize({{var::a0, Rational(0)}, {var::a2, Rational(0)}, {var::a4, Rational(0)}});
}

std::vector<ChainEntry> reference_chains() {
    auto j = load_fixture("reference/chains.json");
    auto sys = [](const nlohmann::json& o) { return PlanarSystem{parse(o.at("P").get<std::string>()), parse(o.at("Q").get<std::string>())}; };
    std::vector<ChainEntry> out;
    for (const auto& e : j.at("systems")) {
        ChainEntry c;
        c.name = e.at("name");
        c.parent = e.value("parent", "");
        c.chart = e.value("chart", "");
        if (e.contains("specialize"))
            for (auto& [k, v] : e["specialize"].items()) {
                c.specialize[VariableTable::index_of(k)] = parse_rational(v.get<std::string>());
            }
        if (e.contains("steps"))
            for (const auto& s : e["steps"]) c.steps.push_back(parse_step(s));
        if (e.contains("displayed")) c.displayed = sys(e["displayed"]);
        if (e.contains("corrected")) c.corrected = sys(e["corrected"]);
        c.note = e.value("note", "");
        if (e.contains("structure")) c.structure = e["structure"];
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::pair<std::string, PlanarSystem>> replay_chains(const std::vector<ChainEntry>& entries) {
    std::vector<std::pair<std::string, PlanarSystem>> out;
    std::map<std::string, PlanarSystem> done;
    for (const auto& e : entries) {
        PlanarSystem s;
        if (!e.chart.empty()) {
            s = chart_system(center_system(), chart_from_string(e.chart)).system();
        } else {
            auto it = done.find(e.parent);
            if (it == done.end()) throw desing_error("chain entry " + e.name + " precedes its parent");
            s = it->second;
        }
        s = replay(s.specialize(e.specialize), e.steps);
        done[e.name] = s;
        out.emplace_back(e.name, s);
    }
    return out;
}

// ---------------------------------------------------------------- names and output

std::string to_string(EquilibriumKind k) {
    switch (k) {
    case EquilibriumKind::HyperbolicSaddle: return "HyperbolicSaddle";
    case EquilibriumKind::HyperbolicNode: return "HyperbolicNode";
    case EquilibriumKind::HyperbolicFocusOrCenter: return "HyperbolicFocusOrCenter";
    case EquilibriumKind::SemiHyperbolicSaddle: return "SemiHyperbolicSaddle";
    case EquilibriumKind::SemiHyperbolicNode: return "SemiHyperbolicNode";
    case EquilibriumKind::SemiHyperbolicSaddleNode: return "SemiHyperbolicSaddleNode";
    case EquilibriumKind::Nilpotent: return "Nilpotent";
    case EquilibriumKind::LinearlyZero: return "LinearlyZero";
    case EquilibriumKind::Unresolved: return "Unresolved";
    }
    return "?";
}

std::string to_string(Stability s) {
    switch (s) {
    case Stability::None: return "none";
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    }
    return "?";
}

std::string to_string(SectorType t) {
    switch (t) {
    case SectorType::Hyperbolic: return "H";
    case SectorType::Elliptic: return "E";
    case SectorType::Parabolic: return "P";
    }
    return "?";
}

std::string to_string(Flow f) {
    switch (f) {
    case Flow::None: return "none";
    case Flow::In: return "in";
    case Flow::Out: return "out";
    }
    return "?";
}

std::string Sector::str() const {
    if (type == SectorType::Parabolic) return "P(" + to_string(flow) + ")";
    return to_string(type);
}

int SectorSequence::count(SectorType t) const {
    return static_cast<int>(std::count_if(sectors.begin(), sectors.end(), [&](const Sector& s) { return s.type == t; }));
}

bool SectorSequence::all_separatrices_on_infinity() const {
    for (const auto& r : rays)
        if (!r.family_boundary && !r.on_infinity) return false;
    return true;
}

bool SectorSequence::two_hyperbolic_on_infinity() const {
    return complete && sectors.size() == 2 && count(SectorType::Hyperbolic) == 2 && all_separatrices_on_infinity();
}

std::string SectorSequence::str() const {
    std::ostringstream os;
    os << "[";
    if (rays.empty() && !sectors.empty()) os << sectors[0].str();
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const auto& r = rays[i];
        if (i) os << " ";
        os << (r.family_boundary ? "|" : r.on_infinity ? "S∞" : "S") << (r.flow == Flow::In ? "<" : r.flow == Flow::Out ? ">" : "");
        if (i < sectors.size()) os << " " << sectors[i].str();
    }
    os << "]";
    if (!complete) os << " incomplete";
    return os.str();
}

bool EquilibriumReport::terminal() const {
    return kind != EquilibriumKind::Unresolved && kind != EquilibriumKind::LinearlyZero &&
           kind != EquilibriumKind::Nilpotent;
}

nlohmann::json to_json(const SectorSequence& s) {
    nlohmann::json j;
    j["summary"] = s.str();
    j["complete"] = s.complete;
    if (!s.note.empty()) j["note"] = s.note;
    j["sectors"] = nlohmann::json::array();
    for (const auto& sec : s.sectors) j["sectors"].push_back(sec.str());
    j["rays"] = nlohmann::json::array();
    for (const auto& r : s.rays)
        j["rays"].push_back({{"angle", r.angle},
                             {"flow", to_string(r.flow)},
                             {"location", r.on_infinity ? "on-infinity" : "finite"},
                             {"family_boundary", r.family_boundary}});
    j["two_hyperbolic_on_infinity"] = s.two_hyperbolic_on_infinity();
    return j;
}

nlohmann::json to_json(const EquilibriumReport& r) {
    nlohmann::json j;
    j["point"] = {r.x.str(), r.y.str()};
    j["point_approx"] = {r.x.approx(), r.y.approx()};
    j["linear_part"] = nlohmann::json::array({nlohmann::json::array({r.linear[0].str(), r.linear[1].str()}),
                                              nlohmann::json::array({r.linear[2].str(), r.linear[3].str()})});
    j["kind"] = to_string(r.kind);
    if (r.stability != Stability::None) j["stability"] = to_string(r.stability);
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (r.reduction) j["reduction"] = {{"m", r.reduction->m}, {"coefficient", r.reduction->coefficient.str()}};
    if (r.sectors) j["sectors"] = to_json(*r.sectors);
    j["trace"] = r.trace;
    return j;
}

// ---------------------------------------------------------------- numeric part

namespace {

// bivariate polynomial in (x, y) over a real algebraic field
struct BiPoly {
    std::map<std::pair<int, int>, AlgNum> t;

    void add(int i, int j, const AlgNum& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t.try_emplace({i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    bool zero() const { return t.empty(); }
    AlgNum coeff(int i, int j) const {
        auto it = t.find({i, j});
        return it == t.end() ? AlgNum(0) : it->second;
    }
    int low_degree() const {
        int d = -1;
        for (const auto& [e, c] : t) d = d < 0 ? e.first + e.second : std::min(d, e.first + e.second);
        return d;
    }
    BiPoly homogeneous(int k) const {
        BiPoly r;
        for (const auto& [e, c] : t)
            if (e.first + e.second == k) r.t.emplace(e, c);
        return r;
    }
    // coefficients of x^0 as a polynomial in y
    std::vector<AlgNum> on_y_axis() const {
        std::vector<AlgNum> r;
        for (const auto& [e, c] : t)
            if (e.first == 0) {
                if (static_cast<int>(r.size()) <= e.second) r.resize(e.second + 1, AlgNum(0));
                r[e.second] = c;
            }
        return r;
    }
    AlgNum at(const AlgNum& x, const AlgNum& y) const {
        AlgNum s(0);
        for (const auto& [e, c] : t) s += c * x.pow(e.first) * y.pow(e.second);
        return s;
    }
    bool has_irrational() const {
        for (const auto& [e, c] : t)
            if (!c.is_rational()) return true;
        return false;
    }
};

BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (const auto& [e, c] : b.t) a.add(e.first, e.second, c);
    return a;
}
BiPoly operator*(const AlgNum& s, const BiPoly& a) {
    BiPoly r;
    for (const auto& [e, c] : a.t) r.add(e.first, e.second, s * c);
    return r;
}
BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [e1, c1] : a.t)
        for (const auto& [e2, c2] : b.t) r.add(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return r;
}
BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + AlgNum(-1) * b; }

BiPoly bi_x() {
    BiPoly r;
    r.add(1, 0, 1);
    return r;
}
BiPoly bi_y() {
    BiPoly r;
    r.add(0, 1, 1);
    return r;
}
BiPoly bi_const(const AlgNum& c) {
    BiPoly r;
    r.add(0, 0, c);
    return r;
}

// F(X(x,y), Y(x,y))
BiPoly compose(const BiPoly& F, const BiPoly& X, const BiPoly& Y) {
    std::vector<BiPoly> xp{bi_const(1)}, yp{bi_const(1)};
    BiPoly r;
    for (const auto& [e, c] : F.t) {
        while (static_cast<int>(xp.size()) <= e.first) xp.push_back(xp.back() * X);
        while (static_cast<int>(yp.size()) <= e.second) yp.push_back(yp.back() * Y);
        r = r + c * (xp[e.first] * yp[e.second]);
    }
    return r;
}

BiPoly from_multipoly(const MultiPoly& p) {
    BiPoly r;
    for (const auto& [m, c] : p.terms()) {
        for (int v = 0; v < kNumVars; ++v)
            if (v != var::x && v != var::y && m.e[v])
                throw desing_error("system has symbolic parameters; specialize them first");
        r.add(static_cast<int>(m.e[var::x]), static_cast<int>(m.e[var::y]), AlgNum(c));
    }
    return r;
}

struct Field {
    BiPoly F, G;
};

Field shift(const Field& s, const AlgNum& x0, const AlgNum& y0) {
    BiPoly X = bi_x() + bi_const(x0), Y = bi_y() + bi_const(y0);
    return {compose(s.F, X, Y), compose(s.G, X, Y)};
}
BiPoly shift(const BiPoly& f, const AlgNum& x0, const AlgNum& y0) {
    return compose(f, bi_x() + bi_const(x0), bi_y() + bi_const(y0));
}

Field twist_field(const Field& s) {
    BiPoly X = bi_x() - bi_y(), Y = bi_y();
    BiPoly F = compose(s.F, X, Y), G = compose(s.G, X, Y);
    return {F + G, G};
}
BiPoly twist_curve(const BiPoly& f) { return compose(f, bi_x() - bi_y(), bi_y()); }

BiPoly sub_xy(const BiPoly& f) {
    BiPoly r;
    for (const auto& [e, c] : f.t) r.add(e.first + e.second, e.second, c);
    return r;
}
int x_order(const BiPoly& f) {
    int p = -1;
    for (const auto& [e, c] : f.t) p = p < 0 ? e.first : std::min(p, e.first);
    return p;
}
BiPoly div_x(const BiPoly& f, int k) {
    BiPoly r;
    for (const auto& [e, c] : f.t) {
        if (e.first < k) throw desing_error("inexact division by x");
        r.t.emplace(std::make_pair(e.first - k, e.second), c);
    }
    return r;
}

// vertical blow-up with maximal exact rescale; returns the power used
Field blow_up(const Field& s, int& power) {
    BiPoly F = sub_xy(s.F), G = sub_xy(s.G);
    BiPoly Q = div_x(G - bi_y() * F, 1);
    int p = std::min(F.zero() ? 1 << 20 : x_order(F), Q.zero() ? 1 << 20 : x_order(Q));
    if (p >= (1 << 20)) throw desing_error("zero field after blow-up");
    power = p;
    return {div_x(F, p), div_x(Q, p)};
}

// strict transform of an invariant curve
BiPoly blow_up_curve(const BiPoly& f) {
    BiPoly g = sub_xy(f);
    if (g.zero()) return g;
    return div_x(g, x_order(g));
}

AlgNum eval_upoly(const std::vector<AlgNum>& c, const AlgNum& v) {
    AlgNum s(0);
    for (std::size_t i = c.size(); i-- > 0;) s = s * v + c[i];
    return s;
}

// ---------------------------------------------------------------- directions and portraits

struct Dir {
    AlgNum dx, dy;
    bool exact = true;
    double ax = 0, ay = 0;

    static Dir of(const AlgNum& a, const AlgNum& b) { return {a, b, true, a.approx(), b.approx()}; }
    static Dir approx_of(double a, double b) { return {AlgNum(0), AlgNum(0), false, a, b}; }
    Dir neg() const { return {-dx, -dy, exact, -ax, -ay}; }
    double angle() const {
        double a = std::atan2(ay, ax);
        return a < 0 ? a + 2 * std::numbers::pi : a;
    }
};

int sgn_d(double v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

int cross_sign(const Dir& a, const Dir& b) {
    if (a.exact && b.exact) return (a.dx * b.dy - a.dy * b.dx).sign();
    return sgn_d(a.ax * b.ay - a.ay * b.ax);
}
int dot_sign(const Dir& a, const Dir& b) {
    if (a.exact && b.exact) return (a.dx * b.dx + a.dy * b.dy).sign();
    return sgn_d(a.ax * b.ax + a.ay * b.ay);
}
bool same_dir(const Dir& a, const Dir& b) { return cross_sign(a, b) == 0 && dot_sign(a, b) > 0; }

// 0: same as r, 1: upper half, 2: opposite, 3: lower half
int category(const Dir& r, const Dir& d) {
    int c = cross_sign(r, d);
    if (c == 0) return dot_sign(r, d) > 0 ? 0 : 2;
    return c > 0 ? 1 : 3;
}
// strictly smaller counterclockwise angle from r
bool ccw_less(const Dir& r, const Dir& a, const Dir& b) {
    int ca = category(r, a), cb = category(r, b);
    if (ca != cb) return ca < cb;
    if (ca == 0 || ca == 2) return false;
    return cross_sign(a, b) > 0;
}

struct Ray {
    Ray() = default;
    Ray(const Dir& dir, Flow f) : d(dir), flow(f) {}
    Dir d;
    Flow flow = Flow::None;
    bool boundary = false;
    std::set<int> markers;
};

struct Portrait {
    std::vector<Ray> rays;
    std::vector<Sector> sectors;  // sectors[i] after rays[i]
    bool complete = true;
    std::string note;
    bool unresolved = false;

    void incomplete(const std::string& why) {
        complete = false;
        if (note.find(why) == std::string::npos) note += (note.empty() ? "" : "; ") + why;
    }
};

Flow flip(Flow f) { return f == Flow::In ? Flow::Out : f == Flow::Out ? Flow::In : f; }
Flow flow_of(int sign) { return sign > 0 ? Flow::Out : Flow::In; }

struct Marker {
    int id;
    BiPoly curve;
};

constexpr int kInfinity = 0;

void label(Ray& r, const std::vector<Marker>& markers) {
    if (r.boundary || !r.d.exact) return;
    for (const auto& m : markers) {
        if (!m.curve.coeff(0, 0).is_zero()) continue;
        AlgNum a = m.curve.coeff(1, 0), b = m.curve.coeff(0, 1);
        if (a.is_zero() && b.is_zero()) continue;
        Dir tangent = Dir::of(-b, a);
        if (cross_sign(r.d, tangent) == 0) r.markers.insert(m.id);
    }
}

// sort rays counterclockwise from the positive x axis; sector types assigned by the caller
void sort_rays(std::vector<Ray>& rays) {
    Dir ref = Dir::of(1, 0);
    std::stable_sort(rays.begin(), rays.end(), [&](const Ray& a, const Ray& b) { return ccw_less(ref, a.d, b.d); });
}

// ---------------------------------------------------------------- local classification

struct Linear {
    AlgNum a, b, c, d;
};

Linear jacobian(const Field& s) { return {s.F.coeff(1, 0), s.F.coeff(0, 1), s.G.coeff(1, 0), s.G.coeff(0, 1)}; }

bool rational_sqrt(const Rational& q, Rational& r) {
    if (sgn(q) < 0) return false;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    r = Rational(sn, sd);
    r.canonicalize();
    return true;
}

// exact eigenvector for the eigenvalue lam
Dir eigenvector(const Linear& A, const AlgNum& lam) {
    AlgNum r1 = A.a - lam, r2 = A.d - lam;
    if (!A.b.is_zero() || !r1.is_zero()) return Dir::of(-A.b, r1);
    return Dir::of(r2, -A.c);
}

struct Local {
    EquilibriumKind kind = EquilibriumKind::Unresolved;
    Stability stability = Stability::None;
    std::string reason;
    std::optional<SeriesReduction> reduction;
    Portrait portrait;
};

using Series = std::vector<AlgNum>;

Series series_mul(const Series& a, const Series& b, int n) {
    Series r(n + 1, AlgNum(0));
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

// f(u, h(u)) truncated at order n
Series substitute_series(const BiPoly& f, const Series& h, int n) {
    std::vector<Series> hp{Series(n + 1, AlgNum(0))};
    hp[0][0] = 1;
    Series r(n + 1, AlgNum(0));
    for (const auto& [e, c] : f.t) {
        while (static_cast<int>(hp.size()) <= e.second) hp.push_back(series_mul(hp.back(), h, n));
        for (int k = 0; k + e.first <= n; ++k)
            if (!hp[e.second][k].is_zero()) r[k + e.first] += c * hp[e.second][k];
    }
    return r;
}

SeriesReduction reduce_semi_hyperbolic(const Field& s, const Linear& A, const AlgNum& lam, const Dir& v0,
                                       const Dir& vl, int order) {
    BiPoly X = v0.dx * bi_x() + vl.dx * bi_y(), Y = v0.dy * bi_x() + vl.dy * bi_y();
    BiPoly Fh = compose(s.F, X, Y), Gh = compose(s.G, X, Y);
    AlgNum det = v0.dx * vl.dy - v0.dy * vl.dx;
    AlgNum inv = det.inverse();
    BiPoly f = (inv * vl.dy) * Fh - (inv * vl.dx) * Gh;   // u'
    BiPoly g = (inv * v0.dx) * Gh - (inv * v0.dy) * Fh;   // v' = lam v + ...
    (void)A;
    BiPoly gn;
    for (const auto& [e, c] : g.t)
        if (!(e.first == 0 && e.second == 1)) gn.t.emplace(e, c);
    Series h(order + 1, AlgNum(0));
    AlgNum minv = -lam.inverse();
    for (int it = 0; it < order; ++it) {
        Series nh = substitute_series(gn, h, order);
        for (auto& c : nh) c = c * minv;
        nh[0] = 0;
        nh[1] = 0;
        h = nh;
    }
    Series r = substitute_series(f, h, order);
    for (int m = 2; m <= order; ++m)
        if (!r[m].is_zero()) return {m, r[m]};
    throw desing_error("series truncation exceeded (order " + std::to_string(order) + ")");
}

Local classify_origin(const Field& s, int order, const std::vector<Marker>& markers) {
    Local L;
    if (!s.F.coeff(0, 0).is_zero() || !s.G.coeff(0, 0).is_zero()) throw desing_error("point is not an equilibrium");
    Linear A = jacobian(s);
    AlgNum tr = A.a + A.d, det = A.a * A.d - A.b * A.c;
    int sdet = det.sign(), str_ = tr.sign();
    Portrait& P = L.portrait;
    auto hyperbolic_sectors = [&](std::size_t n) { P.sectors.assign(n, Sector{SectorType::Hyperbolic, Flow::None}); };
    if (sdet < 0) {
        L.kind = EquilibriumKind::HyperbolicSaddle;
        AlgNum disc = tr * tr - AlgNum(4) * det;
        Dir vu, vs;
        Rational root;
        if (A.b.is_zero() || A.c.is_zero()) {
            AlgNum l1 = A.a, l2 = A.d;
            if (l1.sign() < 0) std::swap(l1, l2);
            vu = eigenvector(A, l1);
            vs = eigenvector(A, l2);
        } else if (disc.is_rational() && rational_sqrt(disc.rational_value(), root)) {
            vu = eigenvector(A, (tr + AlgNum(root)) / AlgNum(2));
            vs = eigenvector(A, (tr - AlgNum(root)) / AlgNum(2));
        } else {
            double a = A.a.approx(), b = A.b.approx(), c = A.c.approx(), d = A.d.approx();
            double sq = std::sqrt((a - d) * (a - d) + 4 * b * c);
            double l1 = (a + d + sq) / 2, l2 = (a + d - sq) / 2;
            vu = Dir::approx_of(-b, a - l1);
            vs = Dir::approx_of(-b, a - l2);
        }
        P.rays = {{vu, Flow::Out}, {vu.neg(), Flow::Out}, {vs, Flow::In}, {vs.neg(), Flow::In}};
        for (auto& r : P.rays) label(r, markers);
        sort_rays(P.rays);
        hyperbolic_sectors(4);
        return L;
    }
    if (sdet > 0) {
        AlgNum disc = tr * tr - AlgNum(4) * det;
        if (str_ == 0 || disc.sign() < 0) {
            L.kind = EquilibriumKind::HyperbolicFocusOrCenter;
            L.reason = str_ == 0 ? "linear center" : "focus";
            L.stability = str_ < 0 ? Stability::Stable : str_ > 0 ? Stability::Unstable : Stability::None;
            P.unresolved = true;
            P.incomplete("monodromic point");
            return L;
        }
        L.kind = EquilibriumKind::HyperbolicNode;
        L.stability = str_ < 0 ? Stability::Stable : Stability::Unstable;
        P.sectors = {Sector{SectorType::Parabolic, flow_of(str_)}};
        return L;
    }
    if (str_ != 0) {
        const AlgNum& lam = tr;
        Dir v0 = (!A.a.is_zero() || !A.b.is_zero()) ? Dir::of(-A.b, A.a) : Dir::of(-A.d, A.c);
        Dir vl = eigenvector(A, lam);
        SeriesReduction red = reduce_semi_hyperbolic(s, A, lam, v0, vl, order);
        L.reduction = red;
        int sl = lam.sign(), sa = red.coefficient.sign();
        if (red.m % 2 == 1) {
            if (sa * sl < 0) {
                L.kind = EquilibriumKind::SemiHyperbolicSaddle;
                P.rays = {{vl, flow_of(sl)}, {vl.neg(), flow_of(sl)}, {v0, flow_of(sa)}, {v0.neg(), flow_of(sa)}};
                for (auto& r : P.rays) label(r, markers);
                sort_rays(P.rays);
                hyperbolic_sectors(4);
            } else {
                L.kind = EquilibriumKind::SemiHyperbolicNode;
                L.stability = sl < 0 ? Stability::Stable : Stability::Unstable;
                P.sectors = {Sector{SectorType::Parabolic, flow_of(sl)}};
            }
            return L;
        }
        L.kind = EquilibriumKind::SemiHyperbolicSaddleNode;
        Dir hv = sa * sl > 0 ? v0.neg() : v0;  // hyperbolic side of the center direction
        P.rays = {{vl, flow_of(sl)}, {vl.neg(), flow_of(sl)}, {hv, flow_of(-sl)}};
        for (auto& r : P.rays) label(r, markers);
        sort_rays(P.rays);
        for (std::size_t i = 0; i < 3; ++i) {
            bool touches = same_dir(P.rays[i].d, hv) || same_dir(P.rays[(i + 1) % 3].d, hv);
            P.sectors.push_back(touches ? Sector{SectorType::Hyperbolic, Flow::None}
                                        : Sector{SectorType::Parabolic, flow_of(sl)});
        }
        return L;
    }
    bool zero = A.a.is_zero() && A.b.is_zero() && A.c.is_zero() && A.d.is_zero();
    L.kind = zero ? EquilibriumKind::LinearlyZero : EquilibriumKind::Nilpotent;
    P.unresolved = true;
    return L;
}

// ---------------------------------------------------------------- blow-down

struct Half {
    Sector bottom, top;
    std::vector<Ray> rays;
    std::vector<Sector> inner;  // inner[i] between rays[i] and rays[i+1]
};

// position of a cut: at ray index, or inside sector index
struct Cut {
    bool at_ray = false;
    std::size_t index = 0;
};

Cut find_cut(Portrait& p, const Dir& t, int divisor) {
    std::size_t n = p.rays.size();
    std::vector<std::size_t> hits, labelled;
    for (std::size_t i = 0; i < n; ++i)
        if (same_dir(p.rays[i].d, t)) {
            hits.push_back(i);
            if (p.rays[i].markers.count(divisor)) labelled.push_back(i);
        }
    if (!labelled.empty()) return {true, labelled.front()};
    if (hits.size() == 1) return {true, hits[0]};
    if (!hits.empty()) {
        p.incomplete("ambiguous cut along the exceptional divisor");
        return {true, hits[hits.size() / 2]};
    }
    bool all_same = true;
    for (std::size_t i = 1; i < n; ++i) all_same = all_same && same_dir(p.rays[i].d, p.rays[0].d);
    for (std::size_t i = 0; i < n; ++i) {
        const Dir& a = p.rays[i].d;
        const Dir& b = p.rays[(i + 1) % n].d;
        if (same_dir(a, b)) {
            if (all_same && i == n - 1) return {false, i};
            continue;
        }
        if (ccw_less(a, t, b)) return {false, i};
    }
    throw desing_error("direction not located in the local portrait");
}

// right half: counterclockwise from -pi/2 to pi/2; left half: clockwise from -pi/2 through pi to pi/2
void split(Portrait& p, int divisor, Half& right, Half& left) {
    if (p.rays.empty()) {
        right.bottom = right.top = left.bottom = left.top = p.sectors[0];
        return;
    }
    Dir down = Dir::of(0, -1), up = Dir::of(0, 1);
    Cut cd = find_cut(p, down, divisor), cu = find_cut(p, up, divisor);
    std::size_t n = p.rays.size();
    // walk counterclockwise from the down cut to the up cut, then back to the down cut
    auto walk = [&](const Cut& from, const Cut& to, bool same_sector_first_pass, Half& h) {
        std::vector<Ray> rays;
        std::vector<Sector> secs;
        std::size_t i = from.index;
        secs.push_back(p.sectors[i]);
        if (!(same_sector_first_pass)) {
            std::size_t j = (i + 1) % n;
            for (std::size_t steps = 0; steps <= n; ++steps) {
                if (to.at_ray && j == to.index) break;
                rays.push_back(p.rays[j]);
                secs.push_back(p.sectors[j]);
                if (!to.at_ray && j == to.index) break;
                j = (j + 1) % n;
            }
        }
        h.bottom = secs.front();
        h.top = secs.back();
        h.rays = rays;
        h.inner.assign(secs.begin() + (secs.size() > 1 ? 1 : 0), secs.end() - (secs.size() > 1 ? 1 : 0));
        if (secs.size() == 1) h.inner.clear();
    };
    // when both cuts fall in one sector, decide which arc of it lies between them
    bool same_dn_up = !cd.at_ray && !cu.at_ray && cd.index == cu.index;
    bool right_inside = false, left_inside = false;
    if (same_dn_up) {
        const Dir& a = p.rays[cd.index].d;
        // counterclockwise from the sector's first ray: which cut comes first
        bool down_first = ccw_less(a, down, up);
        right_inside = down_first;
        left_inside = !down_first;
    }
    walk(cd, cu, right_inside, right);
    Half l;
    walk(cu, cd, left_inside, l);
    // l runs counterclockwise from top to bottom; reverse it for the clockwise traversal
    left.bottom = l.top;
    left.top = l.bottom;
    left.rays.assign(l.rays.rbegin(), l.rays.rend());
    left.inner.assign(l.inner.rbegin(), l.inner.rend());
}

Sector combine(const Sector& src, const Sector& snk, bool& ok) {
    ok = (src.type != SectorType::Elliptic && snk.type != SectorType::Elliptic);
    bool ps = src.type == SectorType::Parabolic, pk = snk.type == SectorType::Parabolic;
    if (ps && pk) return {SectorType::Elliptic, Flow::None};
    if (ps) return {SectorType::Parabolic, Flow::Out};
    if (pk) return {SectorType::Parabolic, Flow::In};
    return {SectorType::Hyperbolic, Flow::None};
}

struct Item {
    enum Kind { RayItem, SectorItem, Arc, Through } kind;
    Ray ray;
    Sector sector;
    // Arc: pieces at the earlier / later end of the list, and flow direction along the list
    Sector early, late;
    bool forward = true;
    Dir d;  // Through: direction of the pass-through point
};

Item arc_item(const Sector& early, const Sector& late, bool forward) {
    Item it{Item::Arc, {}, {}, early, late, forward, {}};
    return it;
}

Sector arc_sector(const Item& a, Portrait& out) {
    bool ok;
    Sector s = a.forward ? combine(a.early, a.late, ok) : combine(a.late, a.early, ok);
    if (!ok) out.incomplete("elliptic sector adjacent to the exceptional divisor");
    return s;
}

// rays become the blown-down directions; sectors merge across pass-through points
Portrait assemble(std::vector<Item> items, Portrait out) {
    // fold pass-through hyperbolic points into the neighbouring arcs
    bool changed = true;
    while (changed && items.size() > 1) {
        changed = false;
        std::size_t n = items.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (items[i].kind != Item::Through || items[i].sector.type != SectorType::Hyperbolic) continue;
            std::size_t pi = (i + n - 1) % n, ni = (i + 1) % n;
            if (items[pi].kind != Item::Arc || items[ni].kind != Item::Arc || pi == ni) continue;
            if (items[pi].forward != items[ni].forward) {
                out.incomplete("inconsistent flow through a divisor point");
                continue;
            }
            Item merged = arc_item(items[pi].early, items[ni].late, items[pi].forward);
            std::vector<Item> next;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == pi) next.push_back(merged);
                else if (k != i && k != ni) next.push_back(items[k]);
            }
            items = std::move(next);
            changed = true;
            break;
        }
    }
    // lower everything to rays and sectors
    std::vector<Item> flat;
    for (auto& it : items) {
        if (it.kind == Item::Arc) {
            Item s{Item::SectorItem, {}, arc_sector(it, out), {}, {}, true, {}};
            flat.push_back(s);
        } else if (it.kind == Item::Through) {
            Item s{Item::SectorItem, {}, it.sector, {}, {}, true, it.d};
            s.d = it.d;
            s.ray.d = it.d;
            s.forward = false;  // marks a sector with a known direction
            flat.push_back(s);
        } else {
            flat.push_back(it);
        }
    }
    // merge adjacent sectors; insert family boundaries where they differ
    auto merge_pass = [&]() {
        std::vector<Item> res;
        for (auto& it : flat) {
            if (!res.empty() && res.back().kind == Item::SectorItem && it.kind == Item::SectorItem) {
                if (res.back().sector == it.sector) {
                    if (!it.forward) res.back().d = it.d, res.back().forward = false;
                    continue;
                }
                Ray b;
                b.boundary = true;
                b.d = !it.forward ? it.d : res.back().d;
                res.push_back(Item{Item::RayItem, b, {}, {}, {}, true, {}});
            }
            res.push_back(it);
        }
        return res;
    };
    flat = merge_pass();
    // cyclic wrap
    if (flat.size() > 1 && flat.front().kind == Item::SectorItem && flat.back().kind == Item::SectorItem) {
        if (flat.front().sector == flat.back().sector) {
            if (flat.back().forward) flat.back() = flat.front();
            flat.erase(flat.begin());
        } else {
            Ray b;
            b.boundary = true;
            b.d = !flat.front().forward ? flat.front().d : flat.back().d;
            flat.push_back(Item{Item::RayItem, b, {}, {}, {}, true, {}});
        }
    }
    std::vector<Ray> rays;
    std::vector<Sector> secs;
    std::size_t first_ray = flat.size();
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (flat[i].kind == Item::RayItem) {
            first_ray = i;
            break;
        }
    if (first_ray == flat.size()) {
        // no rays: a single family
        std::set<std::string> kinds;
        for (auto& it : flat) kinds.insert(it.sector.str());
        if (kinds.size() != 1) out.incomplete("unseparated sectors");
        out.rays.clear();
        out.sectors = {flat.empty() ? Sector{} : flat[0].sector};
        return out;
    }
    std::rotate(flat.begin(), flat.begin() + first_ray, flat.end());
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (flat[i].kind != Item::RayItem) continue;
        rays.push_back(flat[i].ray);
        std::size_t j = (i + 1) % flat.size();
        if (flat[j].kind == Item::SectorItem) {
            secs.push_back(flat[j].sector);
        } else {
            // two separatrices with nothing between: a degenerate (thin) hyperbolic sector
            secs.push_back(Sector{SectorType::Hyperbolic, Flow::None});
            out.incomplete("adjacent separatrices without a sector");
        }
    }
    // a separatrix between two parabolic sectors of its own flow is an ordinary orbit of one family
    for (bool again = true; again && !rays.empty();) {
        again = false;
        std::size_t n = rays.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Sector& before = secs[(i + n - 1) % n];
            const Sector& after = secs[i];
            if (rays[i].boundary || before.type != SectorType::Parabolic || !(before == after) ||
                rays[i].flow != before.flow)
                continue;
            Sector keep = after;
            rays.erase(rays.begin() + i);
            secs.erase(secs.begin() + i);
            if (secs.empty()) secs.push_back(keep);
            again = true;
            break;
        }
    }
    out.rays = std::move(rays);
    out.sectors = std::move(secs);
    return out;
}

struct Driver {
    int order;
    int next_marker = 1;
    std::vector<std::string>* trace;

    void log(int depth, const std::string& s) { trace->push_back(std::string(2 * depth, ' ') + s); }

    Portrait unresolved(const std::string& why) {
        Portrait p;
        p.unresolved = true;
        p.incomplete(why);
        return p;
    }

    Portrait run(const Field& s, std::vector<Marker> markers, int depth, int level, bool force) {
        Local L;
        try {
            L = classify_origin(s, order, markers);
        } catch (const desing_error& e) {
            return unresolved(e.what());
        }
        if (!force && L.kind != EquilibriumKind::LinearlyZero && L.kind != EquilibriumKind::Nilpotent) {
            log(level, to_string(L.kind) + (L.reduction ? " (m=" + std::to_string(L.reduction->m) + ")" : ""));
            return L.portrait;
        }
        if (!force) log(level, to_string(L.kind));
        if (depth <= 0) return unresolved("depth limit reached");
        Field f = s;
        int twists = 0;
        int k = std::min(f.F.zero() ? 1 << 20 : f.F.low_degree(), f.G.zero() ? 1 << 20 : f.G.low_degree());
        BiPoly gamma = f.F.homogeneous(k) * bi_y() - f.G.homogeneous(k) * bi_x();
        bool dicritical = gamma.zero();
        // x = 0 characteristic: gamma(0, 1) = 0
        while (!dicritical && gamma.coeff(0, k + 1).is_zero()) {
            if (twists >= k + 2) return unresolved("no non-characteristic vertical direction found");
            f = twist_field(f);
            for (auto& m : markers) m.curve = twist_curve(m.curve);
            ++twists;
            log(level, "twist");
            gamma = f.F.homogeneous(k) * bi_y() - f.G.homogeneous(k) * bi_x();
        }
        int p = 0;
        Field b;
        try {
            b = blow_up(f, p);
        } catch (const desing_error& e) {
            return unresolved(e.what());
        }
        log(level, "vertical_blowup, time_rescale(" + std::to_string(p) + ")");
        std::vector<Marker> bm;
        for (const auto& m : markers) {
            BiPoly c = blow_up_curve(m.curve);
            if (!c.zero()) bm.push_back({m.id, c});
        }
        int divisor = next_marker++;
        bm.push_back({divisor, bi_x()});
        bool odd = p % 2 == 1;
        Portrait out;
        std::vector<AlgNum> D = b.F.on_y_axis();
        bool invariant = true;
        for (const auto& c : D) invariant = invariant && c.is_zero();
        std::vector<AlgNum> R = invariant ? b.G.on_y_axis() : D;
        while (!R.empty() && R.back().is_zero()) R.pop_back();
        if (R.empty()) return unresolved("line of equilibria on the exceptional divisor");
        // roots of R on the divisor
        std::vector<Rational> rc;
        bool irrational = false;
        for (const auto& c : R) irrational = irrational || !c.is_rational();
        if (irrational) {
            AlgNum lead = R.back();
            irrational = false;
            for (auto& c : R) {
                c = c / lead;
                irrational = irrational || !c.is_rational();
            }
            if (irrational) return unresolved("nested algebraic extension on the exceptional divisor");
        }
        for (const auto& c : R) rc.push_back(c.rational_value());
        std::vector<RealRoot> roots = real_roots(UPoly(rc));
        bool field_irrational = b.F.has_irrational() || b.G.has_irrational();
        std::vector<AlgNum> ys;
        for (const auto& r : roots) {
            if (r.exact) ys.push_back(AlgNum(r.value));
            else if (field_irrational) return unresolved("nested algebraic extension on the exceptional divisor");
            else ys.push_back(AlgNum::generator(AlgebraicReal::from_root(r)));
        }
        // flow signs along the divisor: sample points between the roots
        auto sample_sign = [&](const Rational& v) { return eval_upoly(R, AlgNum(v)).sign(); };
        std::vector<int> arc_sign;  // arc i lies below root i; arc n above the last root
        for (std::size_t i = 0; i <= roots.size(); ++i) {
            Rational v;
            if (roots.empty()) v = 0;
            else if (i == 0) v = roots[0].interval.lo - 1;
            else if (i == roots.size()) v = roots.back().interval.hi + 1;
            else {
                Rational a = roots[i - 1].interval.hi, b = roots[i].interval.lo, q = (b - a) / 4;
                v = simplest_rational(Rational(a + q), Rational(b - q));
            }
            arc_sign.push_back(sample_sign(v));
        }
        int lead_fix = 1;
        {
            // normalizing by an irrational leading coefficient may have flipped the sign
            std::vector<AlgNum> raw = invariant ? b.G.on_y_axis() : D;
            while (!raw.empty() && raw.back().is_zero()) raw.pop_back();
            lead_fix = raw.back().sign() * R.back().sign();
        }
        for (auto& sgn_ : arc_sign) sgn_ *= lead_fix;
        int par = odd ? -1 : 1;

        if (!invariant) {
            // dicritical: every arc is a parabolic family
            log(level, "dicritical divisor, " + std::to_string(roots.size()) + " tangencies");
            std::vector<Item> items;
            std::size_t n = roots.size();
            auto fam = [&](int sign, bool right) {
                Flow fl = right ? flow_of(sign) : flow_of(-sign * par);
                return Item{Item::SectorItem, {}, Sector{SectorType::Parabolic, fl}, {}, {}, true, {}};
            };
            auto boundary = [&](const AlgNum& y, bool right) {
                Ray r;
                r.boundary = true;
                r.d = right ? Dir::of(1, y) : Dir::of(-1, -y);
                return Item{Item::RayItem, r, {}, {}, {}, true, {}};
            };
            for (std::size_t i = 0; i <= n; ++i) {
                items.push_back(fam(arc_sign[i], true));
                if (i < n) items.push_back(boundary(ys[i], true));
            }
            for (std::size_t i = 0; i <= n; ++i) {
                items.push_back(fam(arc_sign[i], false));
                if (i < n) items.push_back(boundary(ys[i], false));
            }
            Portrait base;
            base.incomplete("dicritical exceptional divisor");
            Portrait res = assemble(items, base);
            return res;
        }

        std::size_t n = roots.size();
        if (n == 0) return unresolved("monodromic: no equilibria on the exceptional divisor");
        std::vector<Half> right(n), left(n);
        for (std::size_t i = 0; i < n; ++i) {
            log(level, "divisor point y=" + ys[i].str() + " (~" + std::to_string(ys[i].approx()) + ")");
            Field sub = shift(b, AlgNum(0), ys[i]);
            std::vector<Marker> sm;
            for (const auto& m : bm) sm.push_back({m.id, shift(m.curve, AlgNum(0), ys[i])});
            Portrait sp = run(sub, sm, depth - 1, level + 1, false);
            if (sp.unresolved) {
                Portrait u = unresolved(sp.note);
                return u;
            }
            if (!sp.complete) out.incomplete(sp.note);
            split(sp, divisor, right[i], left[i]);
            if (odd) {
                Half& h = left[i];
                for (Sector* s2 : {&h.bottom, &h.top}) s2->flow = flip(s2->flow);
                for (auto& s2 : h.inner) s2.flow = flip(s2.flow);
                for (auto& r : h.rays) r.flow = flip(r.flow);
            }
        }
        auto place = [&](Ray r, const AlgNum& y, bool right_side) {
            r.d = right_side ? Dir::of(1, y) : Dir::of(-1, -y);
            r.markers.erase(divisor);
            return r;
        };
        auto interior = [&](const Half& h, const AlgNum& y, bool right_side, std::vector<Item>& items) {
            if (h.rays.empty()) {
                Item t{Item::Through, {}, h.bottom, {}, {}, true, right_side ? Dir::of(1, y) : Dir::of(-1, -y)};
                items.push_back(t);
                return;
            }
            for (std::size_t j = 0; j < h.rays.size(); ++j) {
                items.push_back(Item{Item::RayItem, place(h.rays[j], y, right_side), {}, {}, {}, true, {}});
                if (j + 1 < h.rays.size()) {
                    Item s{Item::SectorItem, {}, h.inner[j], {}, {}, false, right_side ? Dir::of(1, y) : Dir::of(-1, -y)};
                    items.push_back(s);
                }
            }
        };
        // flows: right side upward iff R > 0; left side upward iff par*R > 0
        std::vector<Item> items;
        // wrap arc below the first right point: joins the left top of the last point (earlier in the cycle)
        // and the right bottom of the first point; flow along the list = upward on the left above the last root
        items.push_back(arc_item(left[n - 1].top, right[0].bottom, par * arc_sign[n] > 0));
        for (std::size_t i = 0; i < n; ++i) {
            interior(right[i], ys[i], true, items);
            if (i + 1 < n) items.push_back(arc_item(right[i].top, right[i + 1].bottom, arc_sign[i + 1] > 0));
        }
        items.push_back(arc_item(right[n - 1].top, left[0].bottom, arc_sign[n] > 0));
        for (std::size_t i = 0; i < n; ++i) {
            interior(left[i], ys[i], false, items);
            if (i + 1 < n) items.push_back(arc_item(left[i].top, left[i + 1].bottom, par * arc_sign[i + 1] > 0));
        }
        if ((arc_sign[n] > 0) != (par * arc_sign[0] > 0) || (par * arc_sign[n] > 0) != (arc_sign[0] > 0))
            out.incomplete("flow across the vertical direction is inconsistent");
        Portrait res = assemble(items, out);
        // undo the twists: (dx, dy) -> (dx - dy, dy)
        for (int t = 0; t < twists; ++t)
            for (auto& r : res.rays)
                r.d = r.d.exact ? Dir::of(r.d.dx - r.d.dy, r.d.dy) : Dir::approx_of(r.d.ax - r.d.ay, r.d.ay);
        return res;
    }
};

SectorSequence to_sequence(const Portrait& p) {
    SectorSequence s;
    s.complete = p.complete && !p.unresolved;
    s.note = p.note;
    s.sectors = p.sectors;
    for (const auto& r : p.rays)
        s.rays.push_back({r.d.angle(), r.flow, r.markers.count(kInfinity) > 0, r.boundary});
    return s;
}

}  // namespace

SeriesReduction center_manifold_reduction(const PlanarSystem& sys, const AlgNum& x, const AlgNum& y, int order) {
    Field f = shift(Field{from_multipoly(sys.P), from_multipoly(sys.Q)}, x, y);
    if (!f.F.coeff(0, 0).is_zero() || !f.G.coeff(0, 0).is_zero()) throw desing_error("point is not an equilibrium");
    Linear A = jacobian(f);
    AlgNum tr = A.a + A.d, det = A.a * A.d - A.b * A.c;
    if (!det.is_zero() || tr.is_zero()) throw desing_error("point is not semi-hyperbolic");
    Dir v0 = (!A.a.is_zero() || !A.b.is_zero()) ? Dir::of(-A.b, A.a) : Dir::of(-A.d, A.c);
    return reduce_semi_hyperbolic(f, A, tr, v0, eigenvector(A, tr), order);
}

EquilibriumReport classify(const PlanarSystem& sys, const AlgNum& x, const AlgNum& y, int series_order) {
    EquilibriumReport r;
    r.x = x;
    r.y = y;
    Field f = shift(Field{from_multipoly(sys.P), from_multipoly(sys.Q)}, x, y);
    if (!f.F.coeff(0, 0).is_zero() || !f.G.coeff(0, 0).is_zero()) throw desing_error("point is not an equilibrium");
    Linear A = jacobian(f);
    r.linear[0] = A.a;
    r.linear[1] = A.b;
    r.linear[2] = A.c;
    r.linear[3] = A.d;
    Local L;
    try {
        L = classify_origin(f, series_order, {});
    } catch (const desing_error& e) {
        r.kind = EquilibriumKind::Unresolved;
        r.reason = e.what();
        return r;
    }
    r.kind = L.kind;
    r.stability = L.stability;
    r.reason = L.reason;
    r.reduction = L.reduction;
    if (!L.portrait.unresolved) r.sectors = to_sequence(L.portrait);
    r.trace.push_back(to_string(L.kind));
    return r;
}

EquilibriumReport resolve_local_portrait(const PlanarSystem& sys, const AlgNum& x, const AlgNum& y,
                                         const ResolveOptions& opt) {
    EquilibriumReport r = classify(sys, x, y, opt.series_order);
    if (r.kind == EquilibriumKind::HyperbolicFocusOrCenter) return r;
    r.trace.clear();
    Field f = shift(Field{from_multipoly(sys.P), from_multipoly(sys.Q)}, x, y);
    std::vector<Marker> markers;
    if (opt.infinity_curve) markers.push_back({kInfinity, shift(from_multipoly(*opt.infinity_curve), x, y)});
    Driver d{opt.series_order, 1, &r.trace};
    Portrait p = d.run(f, markers, opt.depth, 0, opt.force_blowup);
    if (p.unresolved) {
        if (!opt.force_blowup) r.kind = EquilibriumKind::Unresolved;
        r.reason = p.note;
        r.sectors.reset();
        return r;
    }
    r.sectors = to_sequence(p);
    return r;
}

}  // namespace qc
