#pragma once

#include "qc/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qc {

constexpr int kNumVars = 9;

namespace var {
constexpr int x = 0;
constexpr int y = 1;
constexpr int a0 = 2;
constexpr int a1 = 3;
constexpr int a2 = 4;
constexpr int a3 = 5;
constexpr int a4 = 6;
constexpr int a5 = 7;
constexpr int w = 8;
constexpr int a(int i) { return a0 + i; }
}  // namespace var

class VariableTable {
public:
    static const std::array<std::string, kNumVars>& names();
    static const std::string& name(int index);
    // -1 when unknown
    static int index_of(std::string_view name);
};

class table_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Mono {
    std::array<std::int64_t, kNumVars> e{};

    std::int64_t degree() const;
    std::int64_t xy_degree() const { return e[var::x] + e[var::y]; }
    bool is_one() const;
    bool divides(const Mono& other) const;
    Mono operator*(const Mono& other) const;
    Mono operator/(const Mono& other) const;  // requires divides
    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator!=(const Mono& o) const { return e != o.e; }
};

// Graded reverse lexicographic order on the full table (x > y > a0 > ... > w).
int grevlex_cmp(const Mono& a, const Mono& b);

struct MonoHash {
    std::size_t operator()(const Mono& m) const;
};

class MultiPoly {
public:
    using Term = std::pair<Mono, Rational>;

    MultiPoly() = default;
    MultiPoly(int c) : MultiPoly(Rational(c)) {}
    MultiPoly(const Rational& c);

    static MultiPoly variable(int index);
    static MultiPoly variable(std::string_view name);
    static MultiPoly monomial(const Mono& m, const Rational& c);
    // terms may be unsorted and contain duplicates or zeros
    static MultiPoly from_terms(std::vector<Term> terms);

    // descending grevlex
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Mono& m) const;
    const Term& leading() const { return terms_.front(); }

    std::int64_t total_degree() const;
    std::int64_t degree_in(int index) const;
    // total degree in x and y only; -1 for the zero polynomial
    std::int64_t xy_degree() const;
    // lowest total (x,y)-degree among terms; -1 for zero
    std::int64_t xy_low_degree() const;
    bool uses(int index) const;
    std::vector<int> variables() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(MultiPoly a, int c) { return a *= Rational(c); }
    friend MultiPoly operator*(int c, MultiPoly a) { return a *= Rational(c); }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(std::uint64_t n) const;
    MultiPoly mul_mono(const Mono& m) const;
    // exact division by a monomial; throws std::domain_error if some term is not divisible
    MultiPoly div_mono(const Mono& m) const;
    MultiPoly scale_to_monic() const;
    // lcm of denominators and gcd of numerators of the coefficients
    Integer denominator_lcm() const;

    std::string str() const;

private:
    std::vector<Term> terms_;
};

MultiPoly x_();
MultiPoly y_();
MultiPoly a_(int i);

MultiPoly substitute(const MultiPoly& p, const std::map<int, MultiPoly>& bindings);
MultiPoly evaluate(const MultiPoly& p, const std::map<int, Rational>& values);
MultiPoly diff(const MultiPoly& p, int index);
// sum of the terms whose (x,y)-degree equals k
MultiPoly homogeneous_component(const MultiPoly& p, std::int64_t k);
// coefficient of x^i y^j as a polynomial in the remaining variables
MultiPoly xy_coefficient(const MultiPoly& p, std::int64_t i, std::int64_t j);
// map (i,j) -> coefficient polynomial
std::map<std::pair<std::int64_t, std::int64_t>, MultiPoly> xy_coefficients(const MultiPoly& p);

std::string to_string(const MultiPoly& p);

}  // namespace qc
