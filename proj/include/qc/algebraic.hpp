#pragma once

#include "qc/upoly.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace qc {

class context_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A real algebraic number given by a squarefree defining polynomial and an isolating interval.
struct AlgebraicReal {
    UPoly defining;
    Interval interval;
    std::vector<UPoly> sturm;

    AlgebraicReal(UPoly m, Interval iv);
    static std::shared_ptr<const AlgebraicReal> from_root(const RealRoot& r);

    // true iff g(alpha) = 0; g must divide defining or be arbitrary (handled via gcd)
    bool is_root_of(const UPoly& g) const;
    // interval of width <= eps containing alpha
    Interval refined(const Rational& eps) const;
    bool same_as(const AlgebraicReal& o) const;
    std::string str() const;
};

using AlphaPtr = std::shared_ptr<const AlgebraicReal>;

// Element of Q(alpha), stored as a polynomial in alpha reduced modulo the defining polynomial.
// A null alpha means the element is rational.
class AlgNum {
public:
    AlgNum() = default;
    AlgNum(int c) : rep_(Rational(c)) {}
    AlgNum(const Rational& c) : rep_(c) {}
    AlgNum(UPoly rep, AlphaPtr alpha);
    static AlgNum generator(const AlphaPtr& alpha);

    const UPoly& rep() const { return rep_; }
    const AlphaPtr& alpha() const { return alpha_; }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rational rational_value() const;  // requires is_rational

    bool is_zero() const;
    int sign() const;
    double approx() const;

    AlgNum operator-() const;
    friend AlgNum operator+(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator/(const AlgNum& a, const AlgNum& b);
    AlgNum& operator+=(const AlgNum& b) { return *this = *this + b; }
    AlgNum& operator-=(const AlgNum& b) { return *this = *this - b; }
    AlgNum& operator*=(const AlgNum& b) { return *this = *this * b; }
    AlgNum inverse() const;
    AlgNum pow(unsigned n) const;

    std::string str() const;

private:
    UPoly rep_;
    AlphaPtr alpha_;
    static AlphaPtr common(const AlgNum& a, const AlgNum& b);
};

inline bool is_zero(const AlgNum& a) { return a.is_zero(); }

}  // namespace qc
