#pragma once

#include "qc/poly.hpp"

#include <optional>
#include <vector>

namespace qc {

// Dense univariate polynomial over Q, coefficients from low to high degree.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rational& c);
    explicit UPoly(std::vector<Rational> coeffs);
    static UPoly x();

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& lead() const { return c_.back(); }
    Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

    Rational operator()(const Rational& v) const;
    int sign_at(const Rational& v) const { return sgn((*this)(v)); }

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    UPoly derivative() const;
    UPoly monic() const;
    // p(v + s)
    UPoly shift(const Rational& s) const;

    std::string str(const std::string& var = "t") const;

private:
    std::vector<Rational> c_;
    void trim();
};

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator/(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);
// s*a + t*b = g (monic gcd)
UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);
UPoly squarefree_part(const UPoly& p);
// Yun decomposition: factors[i] has multiplicity i+1
std::vector<UPoly> squarefree_decomposition(const UPoly& p);

// Converts a polynomial in a single table variable (or a constant); throws std::invalid_argument otherwise.
UPoly to_upoly(const MultiPoly& p, int* variable = nullptr);
MultiPoly to_multipoly(const UPoly& p, int variable);

struct Interval {
    Rational lo, hi;
};

struct RealRoot {
    bool exact = false;
    Rational value;      // when exact
    Interval interval;   // isolating interval (lo == hi == value when exact)
    UPoly defining;      // squarefree polynomial with a single root in the interval
    int multiplicity = 1;
    double approx() const;
};

std::vector<UPoly> sturm_sequence(const UPoly& p);
// number of distinct real roots in (lo, hi]
int sturm_count(const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi);
Rational cauchy_bound(const UPoly& p);

std::vector<RealRoot> real_roots(const UPoly& p, const std::optional<Interval>& range = std::nullopt);
std::vector<RealRoot> real_roots(const MultiPoly& p, const std::optional<Interval>& range = std::nullopt);

// Smallest-denominator rational in [lo, hi].
Rational simplest_rational(const Rational& lo, const Rational& hi);

}  // namespace qc
