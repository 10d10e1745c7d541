#include "qc/json_io.hpp"

#include <stdexcept>

namespace qc {

using nlohmann::json;

json poly_to_json(const MultiPoly& p) {
    json vars = json::array();
    for (const auto& n : VariableTable::names()) vars.push_back(n);
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json exp = json::array();
        for (auto e : m.e) exp.push_back(e);
        terms.push_back({{"exp", exp}, {"num", to_string(c.get_num())}, {"den", to_string(c.get_den())}});
    }
    return {{"vars", vars}, {"terms", terms}};
}

MultiPoly poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        throw std::invalid_argument("polynomial JSON needs 'vars' and 'terms'");
    std::vector<int> index;
    for (const auto& v : j.at("vars")) {
        int i = VariableTable::index_of(v.get<std::string>());
        if (i < 0) throw table_mismatch("unknown variable in JSON: " + v.get<std::string>());
        index.push_back(i);
    }
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
        const auto& exp = t.at("exp");
        if (exp.size() != index.size()) throw std::invalid_argument("exponent vector length mismatch");
        Mono m;
        for (std::size_t k = 0; k < index.size(); ++k) {
            auto e = exp[k].get<std::int64_t>();
            if (e < 0) throw std::invalid_argument("negative exponent in JSON");
            m.e[index[k]] = e;
        }
        Integer num(t.at("num").get<std::string>(), 10), den(t.at("den").get<std::string>(), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in JSON");
        Rational c(num, den);
        c.canonicalize();
        terms.emplace_back(m, c);
    }
    return MultiPoly::from_terms(std::move(terms));
}

json rational_to_json(const Rational& r) { return to_string(r); }

}  // namespace qc
