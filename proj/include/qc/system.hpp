#pragma once

#include "qc/poly.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace qc {

// (x', y') = (P, Q) with coefficients polynomial in a0..a5
struct PlanarSystem {
    MultiPoly P, Q;

    // max total (x,y)-degree of P and Q
    std::int64_t degree() const;
    PlanarSystem specialize(const std::map<int, Rational>& values) const;
    // parameters a_i still present
    std::vector<int> parameters() const;
    bool operator==(const PlanarSystem& o) const { return P == o.P && Q == o.Q; }
    std::string str() const;
};

class schema_error : public std::runtime_error {
public:
    schema_error(const std::string& path, const std::string& msg)
        : std::runtime_error(path + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// {"P": "...", "Q": "...", "params": {"a3": "-1"}, "metadata": {...}}
struct SystemDescription {
    std::string P, Q;
    std::map<std::string, std::string> params;
    nlohmann::json metadata = nlohmann::json::object();

    static SystemDescription from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    PlanarSystem system() const;
};

PlanarSystem load_system(const std::string& path);
// "a3=-1,a5=-1/2" -> {a3: -1, a5: -1/2}
std::map<int, Rational> parse_assignments(const std::string& text);

// ẋ = y, ẏ = -x + a0 y^5 + a1 x y^4 + ... + a5 x^5
PlanarSystem quintic_family();
// true iff sys has the shape of the quintic family with parameters possibly specialized
bool has_quintic_shape(const PlanarSystem& sys);

}  // namespace qc
