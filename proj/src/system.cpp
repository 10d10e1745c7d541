#include "qc/system.hpp"

#include "qc/parse.hpp"
#include "qc/rational.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qc {

std::int64_t PlanarSystem::degree() const { return std::max(P.xy_degree(), Q.xy_degree()); }

PlanarSystem PlanarSystem::specialize(const std::map<int, Rational>& values) const {
    return {evaluate(P, values), evaluate(Q, values)};
}

std::vector<int> PlanarSystem::parameters() const {
    std::vector<int> out;
    for (int i = 0; i < 6; ++i)
        if (P.uses(var::a(i)) || Q.uses(var::a(i))) out.push_back(var::a(i));
    return out;
}

std::string PlanarSystem::str() const { return "x' = " + P.str() + ", y' = " + Q.str(); }

SystemDescription SystemDescription::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw schema_error("$", "expected an object");
    SystemDescription d;
    for (const char* key : {"P", "Q"}) {
        if (!j.contains(key)) throw schema_error(std::string("$.") + key, "missing field");
        if (!j[key].is_string()) throw schema_error(std::string("$.") + key, "expected an expression string");
    }
    d.P = j["P"].get<std::string>();
    d.Q = j["Q"].get<std::string>();
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw schema_error("$.params", "expected an object");
        for (const auto& [k, v] : j["params"].items()) {
            std::string path = "$.params." + k;
            auto idx = VariableTable::index_of(k);
            if (idx < var::a0 || idx > var::a5) throw schema_error(path, "only a0..a5 may be bound");
            if (v.is_string())
                d.params[k] = v.get<std::string>();
            else if (v.is_number_integer())
                d.params[k] = std::to_string(v.get<long long>());
            else
                throw schema_error(path, "expected a rational string");
        }
    }
    if (j.contains("metadata")) d.metadata = j["metadata"];
    return d;
}

nlohmann::json SystemDescription::to_json() const {
    nlohmann::json j{{"P", P}, {"Q", Q}};
    if (!params.empty()) j["params"] = params;
    if (!metadata.empty()) j["metadata"] = metadata;
    return j;
}

PlanarSystem SystemDescription::system() const {
    PlanarSystem s;
    try {
        s.P = parse(P);
    } catch (const parse_error& e) {
        throw schema_error("$.P", e.what());
    }
    try {
        s.Q = parse(Q);
    } catch (const parse_error& e) {
        throw schema_error("$.Q", e.what());
    }
    if (s.P.uses(var::w) || s.Q.uses(var::w)) throw schema_error("$", "w is reserved for ideal computations");
    std::map<int, Rational> values;
    for (const auto& [k, v] : params) {
        try {
            values[VariableTable::index_of(k)] = parse_rational(v);
        } catch (const std::exception& e) {
            throw schema_error("$.params." + k, e.what());
        }
    }
    return values.empty() ? s : s.specialize(values);
}

PlanarSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error("$", std::string("malformed JSON: ") + e.what());
    }
    auto d = SystemDescription::from_json(j);
    auto sys = d.system();
    if (d.metadata.is_object() && d.metadata.value("family", "") == "quintic" && !has_quintic_shape(sys))
        throw schema_error("$", "system does not have the quintic family shape");
    return sys;
}

std::map<int, Rational> parse_assignments(const std::string& text) {
    std::map<int, Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + item + "'");
        std::string name = item.substr(0, eq);
        auto idx = VariableTable::index_of(name);
        if (idx < var::a0 || idx > var::a5) throw std::invalid_argument("cannot bind '" + name + "'");
        out[idx] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

PlanarSystem quintic_family() {
    MultiPoly q = -x_();
    for (int i = 0; i < 6; ++i) q += a_(i) * x_().pow(i) * y_().pow(5 - i);
    return {y_(), q};
}

bool has_quintic_shape(const PlanarSystem& sys) {
    if (sys.P != y_()) return false;
    MultiPoly rest = sys.Q + x_();
    for (const auto& [m, c] : rest.terms())
        if (m.xy_degree() != 5) return false;
    return true;
}

}  // namespace qc
