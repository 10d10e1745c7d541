#pragma once

#include "qc/algebraic.hpp"
#include "qc/config.hpp"
#include "qc/system.hpp"

#include <json.hpp>

#include <map>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

class desing_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// gamma = P_k y - Q_k x for the lowest common degree k of (P, Q) at the origin
struct CharacteristicForm {
    std::int64_t k = 0;
    MultiPoly gamma;
    bool all_directions = false;  // gamma identically zero
};

CharacteristicForm characteristic_form(const PlanarSystem& sys);

enum class TransformKind { VerticalBlowup, HorizontalBlowup, Twist, Untwist, TimeRescale, Translate };
std::string to_string(TransformKind k);

struct TransformStep {
    TransformKind kind = TransformKind::VerticalBlowup;
    int power = 0;       // TimeRescale: divide by x^power
    Rational dx, dy;     // Translate: (x, y) -> (x + dx, y + dy)
    std::string str() const;
};

TransformStep vertical_blowup();
TransformStep horizontal_blowup();
TransformStep twist();
TransformStep untwist();
TransformStep time_rescale(int power);
TransformStep translate(const Rational& dx, const Rational& dy);

// vertical blow-up (x,y) -> (x, xy) gives (P(x,xy), (Q(x,xy) - y P(x,xy))/x);
// twist (x,y) -> (x-y, y) gives ((P+Q)(x-y,y), Q(x-y,y))
PlanarSystem transform(const PlanarSystem& sys, const TransformStep& step);
PlanarSystem replay(const PlanarSystem& sys, const std::vector<TransformStep>& log);
// largest p with x^p dividing both components
int max_rescale_power(const PlanarSystem& sys);

enum class EquilibriumKind {
    HyperbolicSaddle,
    HyperbolicNode,
    HyperbolicFocusOrCenter,
    SemiHyperbolicSaddle,
    SemiHyperbolicNode,
    SemiHyperbolicSaddleNode,
    Nilpotent,
    LinearlyZero,
    Unresolved
};
std::string to_string(EquilibriumKind k);

enum class Stability { None, Stable, Unstable };
std::string to_string(Stability s);

enum class SectorType { Hyperbolic, Elliptic, Parabolic };
enum class Flow { None, In, Out };
std::string to_string(SectorType t);
std::string to_string(Flow f);

struct Sector {
    SectorType type = SectorType::Hyperbolic;
    Flow flow = Flow::None;  // parabolic sectors only
    bool operator==(const Sector& o) const { return type == o.type && flow == o.flow; }
    std::string str() const;
};

struct SeparatrixInfo {
    double angle = 0;          // tangent direction in radians, [0, 2pi)
    Flow flow = Flow::None;
    bool on_infinity = false;
    bool family_boundary = false;  // edge between two parabolic/elliptic families, not a separatrix
};

// sectors[i] lies counterclockwise after rays[i]; with no rays there is a single sector
struct SectorSequence {
    std::vector<SeparatrixInfo> rays;
    std::vector<Sector> sectors;
    bool complete = true;
    std::string note;

    int count(SectorType t) const;
    bool all_separatrices_on_infinity() const;
    // exactly two hyperbolic sectors and every separatrix on the infinite circle
    bool two_hyperbolic_on_infinity() const;
    std::string str() const;
};

struct SeriesReduction {
    int m = 0;
    AlgNum coefficient;
};

struct EquilibriumReport {
    AlgNum x, y;
    AlgNum linear[4];  // row-major Jacobian
    EquilibriumKind kind = EquilibriumKind::Unresolved;
    Stability stability = Stability::None;
    std::string reason;
    std::optional<SeriesReduction> reduction;
    std::optional<SectorSequence> sectors;
    std::vector<std::string> trace;

    bool terminal() const;
};

struct ResolveOptions {
    int depth = config().desing_depth;
    int series_order = config().series_order;
    // invariant curve whose separatrices count as lying on the infinite circle (e.g. y for chart systems)
    std::optional<MultiPoly> infinity_curve;
    // blow up even when the point is elementary (cross-checks the blow-down)
    bool force_blowup = false;
};

// center-manifold reduction at a semi-hyperbolic point translated to the origin
SeriesReduction center_manifold_reduction(const PlanarSystem& sys, const AlgNum& x, const AlgNum& y,
                                          int order = config().series_order);
EquilibriumReport classify(const PlanarSystem& sys, const AlgNum& x, const AlgNum& y,
                           int series_order = config().series_order);
EquilibriumReport resolve_local_portrait(const PlanarSystem& sys, const AlgNum& x, const AlgNum& y,
                                         const ResolveOptions& opt = {});

// "vertical_blowup", "twist", "time_rescale(3)", "translate(0,1)", ...
TransformStep parse_step(const std::string& text);

// a system of the reference blow-up chains, derived from its parent by specialization and steps
struct ChainEntry {
    std::string name;
    std::string parent;  // empty for chart systems
    std::string chart;   // U1 or U2 for roots
    std::map<int, Rational> specialize;
    std::vector<TransformStep> steps;
    std::optional<PlanarSystem> displayed, corrected;
    std::string note;
    nlohmann::json structure;

    // the form the computation must reproduce
    const PlanarSystem& expected() const { return corrected ? *corrected : *displayed; }
};

std::vector<ChainEntry> reference_chains();
// computed system of every entry, in fixture order
std::vector<std::pair<std::string, PlanarSystem>> replay_chains(const std::vector<ChainEntry>& entries);
// quintic family with a0 = a2 = a4 = 0
PlanarSystem center_system();

nlohmann::json to_json(const SectorSequence& s);
nlohmann::json to_json(const EquilibriumReport& r);

}  // namespace qc
