#pragma once

#include "qc/config.hpp"
#include "qc/poly.hpp"

#include <random>

namespace qc::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(config().random_seed);
    return g;
}

inline Rational random_rational(std::mt19937_64& g, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 5);
    Rational r(num(g), den(g));
    r.canonicalize();
    return r;
}

// small random polynomial over the given variables
inline MultiPoly random_poly(std::mt19937_64& g, const std::vector<int>& vars, int max_terms = 4, int max_exp = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms), ex(0, max_exp);
    std::vector<MultiPoly::Term> terms;
    int n = nterms(g);
    for (int i = 0; i < n; ++i) {
        Mono m;
        for (int v : vars) m.e[v] = ex(g);
        terms.emplace_back(m, random_rational(g));
    }
    return MultiPoly::from_terms(std::move(terms));
}

}  // namespace qc::testing
