#pragma once

#include "qc/algebraic.hpp"
#include "qc/compactify.hpp"
#include "qc/desing.hpp"
#include "qc/lyapunov.hpp"
#include "qc/system.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qc {

// a_i multiplies x^i y^(5-i) in the quintic family
struct FamilyParameters {
    std::array<Rational, 6> a{};

    static FamilyParameters from_assignments(const std::map<int, Rational>& values);
    // "a3=-1,a5=-1"; unlisted coefficients are zero
    static FamilyParameters parse(const std::string& text);
    std::map<int, Rational> assignments() const;
    PlanarSystem system() const;
    std::string str() const;
};

struct FinitePoint {
    AlgNum x, y;
    bool exact = true;  // false when y was matched to x numerically
};

struct FiniteEquilibria {
    bool positive_dimensional = false;
    std::vector<FinitePoint> points;
    std::string method;
};

// real solutions of P = Q = 0 for numeric coefficients
FiniteEquilibria finite_equilibria(const PlanarSystem& sys);

enum class CenterVerdict { CenterUniqueEquilibrium, Focus, CenterExtraEquilibria };
std::string to_string(CenterVerdict v);

struct CenterCheck {
    CenterVerdict verdict = CenterVerdict::Focus;
    bool center_predicate = false;  // a0 = a2 = a4 = 0
    Reversibility reversibility = Reversibility::None;
    std::optional<WeakFocus> weak_focus;
    FiniteEquilibria equilibria;
    bool cross_validated = false;
};

CenterCheck center_check(const FamilyParameters& p);

// one of c1..c6 for a1 = 0 and a5 <= 0, with a^2 = -a5; empty otherwise
std::string infinity_case(const FamilyParameters& p);

enum class GlobalMode { Theorem, Pipeline };
enum class GlobalVerdict { True, False, Undecided };
std::string to_string(GlobalVerdict v);

struct InfinitePointReport {
    Chart chart = Chart::U1;
    AlgNum x;
    EquilibriumReport report;
    bool two_hyperbolic = false;
};

struct GlobalCenterResult {
    GlobalVerdict verdict = GlobalVerdict::Undecided;
    GlobalMode mode = GlobalMode::Theorem;
    std::string reason;
    std::string infinity_case;
    std::optional<CenterCheck> center;
    bool line_at_infinity = false;
    std::vector<InfinitePointReport> infinite_points;
    nlohmann::json escape = nullptr;  // numeric escape evidence when the verdict is false at infinity
};

// a1 = a2 = a0 = a4 = 0, a3 <= 0, a5 <= 0
bool global_center_predicate(const FamilyParameters& p);
GlobalCenterResult global_center_check(const FamilyParameters& p, GlobalMode mode);

nlohmann::json to_json(const FinitePoint& p);
nlohmann::json to_json(const FiniteEquilibria& e);
nlohmann::json to_json(const CenterCheck& c);
nlohmann::json to_json(const GlobalCenterResult& r);

}  // namespace qc
