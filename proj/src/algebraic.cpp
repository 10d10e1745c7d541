#include "qc/algebraic.hpp"

#include <sstream>

namespace qc {

AlgebraicReal::AlgebraicReal(UPoly m, Interval iv) : defining(std::move(m)), interval(std::move(iv)) {
    sturm = sturm_sequence(defining);
}

std::shared_ptr<const AlgebraicReal> AlgebraicReal::from_root(const RealRoot& r) {
    if (r.exact) {
        return std::make_shared<AlgebraicReal>(UPoly(std::vector<Rational>{-r.value, 1}), Interval{r.value, r.value});
    }
    return std::make_shared<AlgebraicReal>(r.defining, r.interval);
}

bool AlgebraicReal::is_root_of(const UPoly& g) const {
    if (g.is_zero()) return true;
    if (interval.lo == interval.hi) return g.sign_at(interval.lo) == 0;
    UPoly h = gcd(g, defining);
    if (h.degree() <= 0) return false;
    return sturm_count(sturm_sequence(h), interval.lo, interval.hi) > 0;
}

Interval AlgebraicReal::refined(const Rational& eps) const {
    Interval iv = interval;
    if (iv.lo == iv.hi) return iv;
    int slo = defining.sign_at(iv.lo);
    while (iv.hi - iv.lo > eps) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int s = defining.sign_at(mid);
        if (s == 0) return {mid, mid};
        if (s == slo) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

bool AlgebraicReal::same_as(const AlgebraicReal& o) const {
    if (this == &o) return true;
    if (!(defining.monic() == o.defining.monic())) return false;
    return !(interval.hi < o.interval.lo || o.interval.hi < interval.lo);
}

std::string AlgebraicReal::str() const {
    std::ostringstream os;
    os << "root of " << defining.str() << " in [" << to_string(interval.lo) << ", " << to_string(interval.hi) << "]";
    return os.str();
}

AlgNum::AlgNum(UPoly rep, AlphaPtr alpha) : rep_(std::move(rep)), alpha_(std::move(alpha)) {
    if (alpha_) {
        rep_ = rep_ % alpha_->defining;
        if (alpha_->defining.degree() == 1) {
            Rational root = -alpha_->defining.coeff(0) / alpha_->defining.coeff(1);
            rep_ = UPoly(rep_(root));
            alpha_.reset();
        }
    }
    if (rep_.degree() <= 0) alpha_.reset();
}

AlgNum AlgNum::generator(const AlphaPtr& alpha) { return AlgNum(UPoly::x(), alpha); }

Rational AlgNum::rational_value() const {
    if (!is_rational()) throw std::logic_error("algebraic element is not rational");
    return rep_.coeff(0);
}

AlphaPtr AlgNum::common(const AlgNum& a, const AlgNum& b) {
    if (!a.alpha_) return b.alpha_;
    if (!b.alpha_) return a.alpha_;
    if (a.alpha_ == b.alpha_ || a.alpha_->same_as(*b.alpha_)) return a.alpha_;
    throw context_mismatch("arithmetic across distinct algebraic extensions");
}

bool AlgNum::is_zero() const {
    if (rep_.is_zero()) return true;
    if (!alpha_) return false;
    return alpha_->is_root_of(rep_);
}

int AlgNum::sign() const {
    if (!alpha_) return sgn(rep_.coeff(0));
    if (is_zero()) return 0;
    // interval evaluation with refinement; terminates because the value is nonzero
    Rational eps = (alpha_->interval.hi - alpha_->interval.lo);
    for (;;) {
        Interval iv = alpha_->refined(eps);
        if (iv.lo == iv.hi) return sgn(rep_(iv.lo));
        Rational lo = 0, hi = 0;
        for (int i = rep_.degree(); i >= 0; --i) {
            Rational c1 = lo * iv.lo, c2 = lo * iv.hi, c3 = hi * iv.lo, c4 = hi * iv.hi;
            Rational mn = std::min({c1, c2, c3, c4}), mx = std::max({c1, c2, c3, c4});
            lo = mn + rep_.coeff(i);
            hi = mx + rep_.coeff(i);
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        eps /= 16;
    }
}

double AlgNum::approx() const {
    if (!alpha_) return rep_.coeff(0).get_d();
    Interval iv = alpha_->refined(Rational(1, 1) / Rational(Integer(1) << 80));
    return rep_(Rational((iv.lo + iv.hi) / 2)).get_d();
}

AlgNum AlgNum::operator-() const { return AlgNum(-rep_, alpha_); }

AlgNum operator+(const AlgNum& a, const AlgNum& b) { return AlgNum(a.rep_ + b.rep_, AlgNum::common(a, b)); }

AlgNum operator-(const AlgNum& a, const AlgNum& b) { return AlgNum(a.rep_ - b.rep_, AlgNum::common(a, b)); }

AlgNum operator*(const AlgNum& a, const AlgNum& b) { return AlgNum(a.rep_ * b.rep_, AlgNum::common(a, b)); }

AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }

AlgNum AlgNum::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in algebraic field");
    if (!alpha_) return AlgNum(Rational(1 / rep_.coeff(0)));
    UPoly m = alpha_->defining;
    UPoly g = gcd(rep_, m);
    if (g.degree() > 0) m = m / g;  // alpha is not a root of g, so it is a root of m/g
    UPoly s, t;
    UPoly d = ext_gcd(rep_, m, s, t);
    if (d.degree() != 0) throw std::logic_error("inverse: unexpected common factor");
    return AlgNum(s, alpha_);
}

AlgNum AlgNum::pow(unsigned n) const {
    AlgNum r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

std::string AlgNum::str() const {
    if (!alpha_) return to_string(rep_.coeff(0));
    return rep_.str("alpha");
}

}  // namespace qc
