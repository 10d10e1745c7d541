#pragma once

#include "qc/config.hpp"
#include "qc/system.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

class lyapunov_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// H = (x^2+y^2)/2 + sum over degrees p of q_{p-l,l} x^{p-l} y^l
struct FormalIntegral {
    int max_degree = 2;
    // coefficients[p][l] multiplies x^{p-l} y^l
    std::map<int, std::vector<MultiPoly>> coefficients;

    const MultiPoly& q(int p, int l) const { return coefficients.at(p).at(l); }
    MultiPoly polynomial() const;
};

struct LyapunovEntry {
    int index;
    MultiPoly value;
};

struct LyapunovSequence {
    std::vector<LyapunovEntry> entries;
    bool reduced = false;

    const MultiPoly& at(int index) const;
    std::vector<MultiPoly> odd_entries(int up_to) const;
};

struct LyapunovResult {
    LyapunovSequence sequence;
    FormalIntegral integral;
    // the system actually expanded: linear part (-y, x)
    PlanarSystem normalized;
    bool time_reversed = false;
};

// L_j is the coefficient of (x^2+y^2)^j at degree 2j, j = 1..count. A clockwise linear part
// (y, -x) is handled by reversing time. With reduce, each odd-index entry from L_5 on is
// replaced by its normal form modulo the basis of the earlier odd-index entries.
LyapunovResult compute_lyapunov(const PlanarSystem& sys, int count, bool reduce = false);
LyapunovSequence lyapunov_constants(const PlanarSystem& sys, int count, bool reduce = false);

// dH/dx P + dH/dy Q - sum L_j (x^2+y^2)^j has no terms of degree <= 2*count
bool verify_derivative_identity(const LyapunovResult& r);

struct BautinReport {
    struct Item {
        int index;
        bool reduces_to_zero;
    };
    std::vector<Item> items;
    bool ok() const;
};

// each even-index entry L_{2j} must vanish modulo <L_3, ..., L_{2j-1}>
BautinReport bautin_inclusion_check(const LyapunovSequence& seq);

enum class Reversibility { XAxis, YAxis, None };
std::string to_string(Reversibility r);
// x-axis: invariant under (x,y,t) -> (x,-y,-t); y-axis: under (x,y,t) -> (-x,y,-t)
Reversibility reversibility_test(const PlanarSystem& sys);

struct WeakFocus {
    bool center_candidate = false;
    int order = 0;
    Rational value;  // the first nonzero constant
};

// computed == factor * reference after reducing both modulo <earlier>; matches requires factor > 0
struct FactorMatch {
    bool matches = false;
    Rational factor;
    MultiPoly computed_nf, reference_nf;
};
FactorMatch match_modulo(const MultiPoly& computed, const MultiPoly& reference, const std::vector<MultiPoly>& earlier);

// sys must have numeric coefficients
WeakFocus weak_focus_order(const PlanarSystem& sys, int max_count);

}  // namespace qc
