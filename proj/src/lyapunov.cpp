#include "qc/lyapunov.hpp"

#include "qc/groebner.hpp"

namespace qc {

namespace {

using Matrix = std::vector<std::vector<Integer>>;

Integer binomial(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Fraction-free (Bareiss) elimination to upper triangular form, then back substitution.
// Returns false when A is singular.
bool bareiss_solve(Matrix A, std::vector<MultiPoly> b, std::vector<MultiPoly>& out) {
    const std::size_t n = A.size();
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && A[piv][k] == 0) ++piv;
        if (piv == n) return false;
        if (piv != k) {
            std::swap(A[piv], A[k]);
            std::swap(b[piv], b[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) / prev;
            Rational s(A[k][k]), t(A[i][k]);
            s /= Rational(prev);
            t /= Rational(prev);
            b[i] = A[i][k] == 0 ? b[i] * s : b[i] * s - b[k] * t;
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    out.assign(n, MultiPoly());
    for (std::size_t ii = n; ii-- > 0;) {
        MultiPoly acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            if (A[ii][j] != 0 && !out[j].is_zero()) acc -= out[j] * Rational(A[ii][j]);
        out[ii] = acc * (Rational(1) / Rational(A[ii][ii]));
    }
    return true;
}

std::vector<MultiPoly> component(const MultiPoly& p, int k) {
    std::vector<MultiPoly> c(k + 1);
    for (int i = 0; i <= k; ++i) c[i] = xy_coefficient(p, k - i, i);
    return c;
}

bool all_zero(const std::vector<MultiPoly>& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

PlanarSystem normalize(const PlanarSystem& sys, bool& reversed) {
    MultiPoly p1 = homogeneous_component(sys.P, 1), q1 = homogeneous_component(sys.Q, 1);
    if (!homogeneous_component(sys.P, 0).is_zero() || !homogeneous_component(sys.Q, 0).is_zero())
        throw lyapunov_error("the origin is not an equilibrium");
    if (p1 == -y_() && q1 == x_()) {
        reversed = false;
        return sys;
    }
    if (p1 == y_() && q1 == -x_()) {
        reversed = true;
        return {-sys.P, -sys.Q};
    }
    throw lyapunov_error("linear part is not a rotation (-y, x) or (y, -x)");
}

}  // namespace

MultiPoly FormalIntegral::polynomial() const {
    MultiPoly h;
    for (const auto& [p, c] : coefficients)
        for (int l = 0; l <= p; ++l)
            if (!c[l].is_zero()) h += c[l] * x_().pow(p - l) * y_().pow(l);
    return h;
}

const MultiPoly& LyapunovSequence::at(int index) const {
    for (const auto& e : entries)
        if (e.index == index) return e.value;
    throw std::out_of_range("no Lyapunov constant with index " + std::to_string(index));
}

std::vector<MultiPoly> LyapunovSequence::odd_entries(int up_to) const {
    std::vector<MultiPoly> out;
    for (const auto& e : entries)
        if (e.index % 2 == 1 && e.index <= up_to && !e.value.is_zero()) out.push_back(e.value);
    return out;
}

LyapunovResult compute_lyapunov(const PlanarSystem& sys, int count, bool reduce) {
    if (count < 1) throw std::invalid_argument("count must be at least 1");
    LyapunovResult res;
    res.normalized = normalize(sys, res.time_reversed);
    const int n = static_cast<int>(res.normalized.degree());
    std::map<int, std::vector<MultiPoly>> Pk, Qk;
    for (int k = 2; k <= n; ++k) {
        Pk[k] = component(res.normalized.P, k);
        Qk[k] = component(res.normalized.Q, k);
        if (all_zero(Pk[k]) && all_zero(Qk[k])) {
            Pk.erase(k);
            Qk.erase(k);
        }
    }
    auto& H = res.integral.coefficients;
    H[2] = {Rational(1, 2), MultiPoly(), Rational(1, 2)};
    const int top = 2 * count;
    // degree 2 is solved by (x^2+y^2)/2 itself
    res.sequence.entries.push_back({1, MultiPoly()});
    res.integral.max_degree = top;
    for (int d = 3; d <= top; ++d) {
        std::vector<MultiPoly> r(d + 1);
        for (const auto& [k, P] : Pk) {
            const auto& Q = Qk[k];
            int m = d + 1 - k;
            if (m < 2) continue;
            const auto& h = H[m];
            for (int l = 0; l < m; ++l) {
                MultiPoly dx = h[l] * Rational(m - l);
                MultiPoly dy = h[l + 1] * Rational(l + 1);
                for (int i = 0; i <= k; ++i) {
                    if (!dx.is_zero() && !P[i].is_zero()) r[l + i] += dx * P[i];
                    if (!dy.is_zero() && !Q[i].is_zero()) r[l + i] += dy * Q[i];
                }
            }
        }
        const bool even = d % 2 == 0;
        const int size = even ? d + 2 : d + 1;
        Matrix A(size, std::vector<Integer>(size, 0));
        for (int l = 0; l <= d; ++l) {
            if (l + 1 <= d) A[l + 1][l] -= d - l;
            if (l >= 1) A[l - 1][l] += l;
        }
        std::vector<MultiPoly> b(size);
        for (int l = 0; l <= d; ++l) b[l] = -r[l];
        if (even) {
            int j = d / 2;
            for (int m = 0; m <= d; m += 2) A[m][d + 1] = -binomial(j, m / 2);
            A[d + 1][0] = 1;
        }
        std::vector<MultiPoly> z;
        if (!bareiss_solve(A, b, z))
            throw lyapunov_error("singular linear system at degree " + std::to_string(d));
        H[d] = std::vector<MultiPoly>(z.begin(), z.begin() + d + 1);
        if (even) res.sequence.entries.push_back({d / 2, z[d + 1]});
    }
    if (reduce) {
        res.sequence.reduced = true;
        std::vector<MultiPoly> earlier;
        for (auto& e : res.sequence.entries) {
            if (e.index % 2 == 0) continue;
            if (e.index >= 5 && !earlier.empty()) {
                auto gb = groebner(earlier);
                MultiPoly raw = e.value;
                e.value = normal_form(raw, gb);
                if (!raw.is_zero()) earlier.push_back(raw);
                continue;
            }
            if (!e.value.is_zero()) earlier.push_back(e.value);
        }
    }
    return res;
}

LyapunovSequence lyapunov_constants(const PlanarSystem& sys, int count, bool reduce) {
    return compute_lyapunov(sys, count, reduce).sequence;
}

bool verify_derivative_identity(const LyapunovResult& r) {
    MultiPoly H = r.integral.polynomial();
    MultiPoly lhs = diff(H, var::x) * r.normalized.P + diff(H, var::y) * r.normalized.Q;
    // raw constants are needed here; a reduced sequence cannot satisfy the identity
    MultiPoly rho = x_() * x_() + y_() * y_();
    MultiPoly rhs;
    for (const auto& e : r.sequence.entries) rhs += e.value * rho.pow(e.index);
    MultiPoly diffp = lhs - rhs;
    for (const auto& [m, c] : diffp.terms())
        if (m.xy_degree() <= r.integral.max_degree) return false;
    return true;
}

bool BautinReport::ok() const {
    for (const auto& i : items)
        if (!i.reduces_to_zero) return false;
    return true;
}

BautinReport bautin_inclusion_check(const LyapunovSequence& seq) {
    BautinReport rep;
    for (const auto& e : seq.entries) {
        if (e.index % 2 != 0) continue;
        bool zero = e.value.is_zero();
        if (!zero) {
            auto gens = seq.odd_entries(e.index - 1);
            zero = !gens.empty() && is_member(e.value, groebner(gens));
        }
        rep.items.push_back({e.index, zero});
    }
    return rep;
}

std::string to_string(Reversibility r) {
    switch (r) {
        case Reversibility::XAxis: return "x-axis";
        case Reversibility::YAxis: return "y-axis";
        case Reversibility::None: return "none";
    }
    return "none";
}

Reversibility reversibility_test(const PlanarSystem& sys) {
    auto flip = [](const MultiPoly& p, int v) { return substitute(p, {{v, -MultiPoly::variable(v)}}); };
    if (flip(sys.P, var::y) == -sys.P && flip(sys.Q, var::y) == sys.Q) return Reversibility::XAxis;
    if (flip(sys.P, var::x) == sys.P && flip(sys.Q, var::x) == -sys.Q) return Reversibility::YAxis;
    return Reversibility::None;
}

FactorMatch match_modulo(const MultiPoly& computed, const MultiPoly& reference, const std::vector<MultiPoly>& earlier) {
    FactorMatch m;
    if (earlier.empty()) {
        m.computed_nf = computed;
        m.reference_nf = reference;
    } else {
        auto gb = groebner(earlier);
        m.computed_nf = normal_form(computed, gb);
        m.reference_nf = normal_form(reference, gb);
    }
    if (m.computed_nf.is_zero() || m.reference_nf.is_zero()) {
        m.matches = m.computed_nf.is_zero() && m.reference_nf.is_zero();
        m.factor = m.matches ? 1 : 0;
        return m;
    }
    m.factor = m.computed_nf.leading().second / m.reference_nf.leading().second;
    m.matches = m.factor > 0 && m.computed_nf == m.reference_nf * m.factor;
    return m;
}

WeakFocus weak_focus_order(const PlanarSystem& sys, int max_count) {
    if (!sys.parameters().empty()) throw std::invalid_argument("weak_focus_order needs numeric parameters");
    auto seq = lyapunov_constants(sys, max_count);
    WeakFocus wf;
    for (const auto& e : seq.entries)
        if (!e.value.is_zero()) {
            wf.order = e.index;
            wf.value = e.value.constant_term();
            return wf;
        }
    wf.center_candidate = true;
    return wf;
}

}  // namespace qc
