#pragma once

#include "qc/config.hpp"
#include "qc/poly.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

struct MonomialOrder {
    enum class Kind { Lex, DegRevLex, Elim };
    Kind kind = Kind::DegRevLex;
    // table indices, highest priority first; unlisted variables follow in table order
    std::vector<int> priority;
    // for Elim: the first `block` variables of the priority list are eliminated
    // (degrevlex on the block, then degrevlex on the rest)
    int block = 0;

    // degrevlex with w > a5 > ... > a0 > y > x
    static MonomialOrder degrevlex();
    static MonomialOrder lex(std::vector<int> priority);
    static MonomialOrder degrevlex(std::vector<int> priority);
    static MonomialOrder elimination(std::vector<int> eliminated, std::vector<int> rest);

    std::vector<int> full_priority() const;
    int compare(const Mono& a, const Mono& b) const;
    std::string str() const;
};

struct GroebnerBasis {
    std::vector<MultiPoly> generators;  // monic, sorted by leading monomial ascending
    MonomialOrder order;
    bool reduced = true;

    bool is_unit() const;
    MultiPoly leading_monomial(std::size_t i) const;
};

enum class GbStatus { Ok, BudgetExhausted };

struct GbStats {
    std::uint64_t pairs_reduced = 0;
    std::uint64_t zero_reductions = 0;
    std::uint64_t reduction_steps = 0;
    double seconds = 0;
};

struct GbResult {
    GbStatus status = GbStatus::Ok;
    GroebnerBasis basis;
    GbStats stats;
    bool ok() const { return status == GbStatus::Ok; }
};

class budget_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

GbResult buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order = MonomialOrder::degrevlex(),
                    const Budget& budget = config().groebner);
// throws budget_exhausted
GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order = MonomialOrder::degrevlex(),
                       const Budget& budget = config().groebner);

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& gb);
bool is_member(const MultiPoly& p, const GroebnerBasis& gb);

// Division with quotients: p = sum q[i]*divisors[i] + remainder.
struct Division {
    std::vector<MultiPoly> quotients;
    MultiPoly remainder;
};
Division divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors, const MonomialOrder& order);

struct RadicalResult {
    GbStatus status = GbStatus::Ok;
    bool member = false;
    GbStats stats;
};

// 1 in <gens, 1 - w*p> with w eliminated first
RadicalResult is_in_radical(const MultiPoly& p, const std::vector<MultiPoly>& gens,
                            const Budget& budget = config().radical);

struct IntersectResult {
    GbStatus status = GbStatus::Ok;
    std::vector<MultiPoly> generators;
};

// <w*A, (1-w)*B> intersected with the w-free ring
IntersectResult intersect(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b,
                          const Budget& budget = config().groebner);

// values of each generator at the point; throws std::invalid_argument if a generator keeps a free variable
std::vector<Rational> evaluate_ideal(const std::vector<MultiPoly>& gens, const std::map<int, Rational>& point);

}  // namespace qc
