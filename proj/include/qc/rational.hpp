#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qc {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline int sign(const Rational& r) { return sgn(r); }

Rational rational_from_double(double v);
double to_double(const Rational& r);

}  // namespace qc
