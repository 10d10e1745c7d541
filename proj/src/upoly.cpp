#include "qc/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qc {

UPoly::UPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::x() { return UPoly(std::vector<Rational>{0, 1}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& v) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= v;
        acc += *it;
    }
    return acc;
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
}

UPoly UPoly::derivative() const {
    std::vector<Rational> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    UPoly r = *this;
    Rational inv = 1 / c_.back();
    for (auto& c : r.c_) c *= inv;
    return r;
}

UPoly UPoly::shift(const Rational& s) const {
    UPoly acc;
    UPoly lin(std::vector<Rational>{s, 1});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + UPoly(*it);
    return acc;
}

std::string UPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    MultiPoly p;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        Mono m;
        m.e[var::x] = static_cast<std::int64_t>(i);
        p += MultiPoly::monomial(m, c_[i]);
    }
    std::string s = p.str();
    std::string out;
    for (char ch : s) {
        if (ch == 'x') {
            out += var;
        } else {
            out += ch;
        }
    }
    return out;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    std::vector<Rational> quo(std::max(0, a.degree() - db + 1));
    Rational inv = 1 / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        Rational f = rem[i] * inv;
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeffs()[j];
    }
    q = UPoly(std::move(quo));
    rem.resize(std::max(0, std::min(static_cast<int>(rem.size()), db)));
    r = UPoly(std::move(rem));
}

UPoly operator/(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    return r;
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
    UPoly r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        UPoly q, r;
        divmod(r0, r1, q, r);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = s0;
        t = t0;
        return r0;
    }
    Rational inv = 1 / r0.lead();
    s = s0 * UPoly(inv);
    t = t0 * UPoly(inv);
    return r0.monic();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.monic();
    return (p / gcd(p, p.derivative())).monic();
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
    std::vector<UPoly> out;
    if (p.degree() <= 0) return out;
    UPoly f = p.monic();
    UPoly d = f.derivative();
    UPoly a = gcd(f, d);
    UPoly b = f / a;
    UPoly c = d / a;
    UPoly e = c - b.derivative();
    while (b.degree() > 0) {
        UPoly g = gcd(b, e);
        out.push_back(g);
        b = b / g;
        c = e / g;
        e = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

UPoly to_upoly(const MultiPoly& p, int* variable) {
    std::vector<int> vars = p.variables();
    if (vars.size() > 1) throw std::invalid_argument("polynomial is not univariate: " + p.str());
    int v = vars.empty() ? var::x : vars[0];
    if (variable) *variable = v;
    std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(0, p.degree_in(v) + 1)));
    for (const auto& [m, k] : p.terms()) c[static_cast<std::size_t>(m.e[v])] = k;
    return UPoly(std::move(c));
}

MultiPoly to_multipoly(const UPoly& p, int variable) {
    std::vector<MultiPoly::Term> terms;
    for (int i = 0; i <= p.degree(); ++i) {
        Mono m;
        m.e[variable] = i;
        terms.emplace_back(m, p.coeffs()[i]);
    }
    return MultiPoly::from_terms(std::move(terms));
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        UPoly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

namespace {

int sign_changes(const std::vector<UPoly>& seq, const Rational& v) {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = p.sign_at(v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_changes(seq, lo) - sign_changes(seq, hi);
}

Rational cauchy_bound(const UPoly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max<Rational>(m, abs(p.coeffs()[i] / p.lead()));
    return m + 1;
}

Rational simplest_rational(const Rational& lo, const Rational& hi) {
    if (lo > hi) return simplest_rational(hi, lo);
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) return -simplest_rational(-hi, -lo);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) return lo;
    Integer fh;
    mpz_fdiv_q(fh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (fl < fh) return Rational(fl + 1);
    Rational a = lo - Rational(fl), b = hi - Rational(fl);
    Rational inner = simplest_rational(1 / b, 1 / a);
    return Rational(fl) + 1 / inner;
}

double RealRoot::approx() const {
    if (exact) return value.get_d();
    Rational lo = interval.lo, hi = interval.hi;
    if (defining.sign_at(hi) == 0) return hi.get_d();
    int slo = defining.sign_at(lo);
    const Rational eps(1, Integer(1) << 60);
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / 2;
        int s = defining.sign_at(mid);
        if (s == 0) return mid.get_d();
        if (s == slo)
            lo = mid;
        else
            hi = mid;
    }
    return Rational((lo + hi) / 2).get_d();
}

namespace {

Integer integer_lead(const UPoly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Rational lead = p.lead() * Rational(l);
    return abs(lead.get_num());
}

// p squarefree; exactly one root in (lo, hi] and p(hi) != 0 unless it is the root
void finalize(const UPoly& p, const std::vector<UPoly>& seq, Rational lo, Rational hi, std::vector<RealRoot>& out) {
    RealRoot r;
    r.defining = p;
    if (p.sign_at(hi) == 0) {
        r.exact = true;
        r.value = hi;
        r.interval = {hi, hi};
        out.push_back(r);
        return;
    }
    while (p.sign_at(lo) == 0) {
        Rational mid = (lo + hi) / 2;
        if (p.sign_at(mid) == 0) {
            r.exact = true;
            r.value = mid;
            r.interval = {mid, mid};
            out.push_back(r);
            return;
        }
        if (sturm_count(seq, lo, mid) == 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // a rational root p/q has q | lead; two such rationals are at least 1/lead^2 apart
    Integer lead = integer_lead(p);
    Rational width = Rational(1, 1) / Rational(lead * lead) / 2;
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        int s = p.sign_at(mid);
        if (s == 0) {
            r.exact = true;
            r.value = mid;
            r.interval = {mid, mid};
            out.push_back(r);
            return;
        }
        if (s == p.sign_at(lo)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Rational cand = simplest_rational(lo, hi);
    if (p.sign_at(cand) == 0) {
        r.exact = true;
        r.value = cand;
        r.interval = {cand, cand};
    } else {
        r.interval = {lo, hi};
    }
    out.push_back(r);
}

void isolate(const UPoly& p, const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi, int count,
             std::vector<RealRoot>& out) {
    if (count <= 0) return;
    if (count == 1) {
        finalize(p, seq, lo, hi, out);
        return;
    }
    Rational mid = (lo + hi) / 2;
    int left = sturm_count(seq, lo, mid);
    isolate(p, seq, lo, mid, left, out);
    isolate(p, seq, mid, hi, count - left, out);
}

}  // namespace

std::vector<RealRoot> real_roots(const UPoly& p, const std::optional<Interval>& range) {
    if (p.is_zero()) throw std::invalid_argument("real_roots of the zero polynomial");
    std::vector<RealRoot> out;
    if (p.degree() == 0) return out;
    UPoly s = squarefree_part(p);
    auto seq = sturm_sequence(s);
    Rational lo, hi;
    if (range) {
        lo = range->lo;
        hi = range->hi;
        if (lo > hi) throw std::invalid_argument("empty range");
    } else {
        hi = cauchy_bound(s);
        lo = -hi;
    }
    bool root_at_lo = range && s.sign_at(lo) == 0;
    if (root_at_lo) {
        RealRoot r;
        r.exact = true;
        r.value = lo;
        r.interval = {lo, lo};
        r.defining = s;
        out.push_back(r);
    }
    isolate(s, seq, lo, hi, sturm_count(seq, lo, hi), out);
    auto factors = squarefree_decomposition(p);
    for (auto& r : out) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const UPoly& g = factors[i];
            if (g.degree() <= 0) continue;
            bool hit = r.exact ? g.sign_at(r.value) == 0 : sturm_count(sturm_sequence(g), r.interval.lo, r.interval.hi) > 0;
            if (hit) {
                r.multiplicity = static_cast<int>(i) + 1;
                break;
            }
        }
    }
    return out;
}

std::vector<RealRoot> real_roots(const MultiPoly& p, const std::optional<Interval>& range) {
    return real_roots(to_upoly(p), range);
}

}  // namespace qc
