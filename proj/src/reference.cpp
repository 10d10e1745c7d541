#include "qc/reference.hpp"

#include "qc/parse.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace qc {

std::string fixture_path(const std::string& relative) {
    const char* dir = std::getenv("QC_FIXTURES");
    return std::string(dir ? dir : QC_FIXTURE_DIR) + "/" + relative;
}

nlohmann::json load_fixture(const std::string& relative) {
    std::ifstream in(fixture_path(relative));
    if (!in) throw std::runtime_error("missing fixture " + relative);
    return nlohmann::json::parse(in);
}

MultiPoly reference_constant(int index, bool corrected) {
    auto j = load_fixture("reference/lyapunov.json");
    std::string key = "L" + std::to_string(index);
    if (!j.contains(key)) throw std::out_of_range("no stored constant " + key);
    const auto& e = j[key];
    if (corrected && e.contains("corrected")) return parse(e["corrected"].get<std::string>());
    return parse(e["displayed"].get<std::string>());
}

bool reference_constant_has_correction(int index) {
    auto j = load_fixture("reference/lyapunov.json");
    std::string key = "L" + std::to_string(index);
    return j.contains(key) && j[key].contains("corrected");
}

ReferenceIdeal reference_ideal(const std::string& name) {
    auto j = load_fixture("reference/ideals.json");
    if (!j.contains(name)) throw std::out_of_range("no stored ideal " + name);
    const auto& e = j[name];
    ReferenceIdeal r;
    r.name = name;
    for (const auto& g : e["generators"]) r.generators.push_back(parse(g.get<std::string>()));
    r.verified = e.value("verified", false);
    r.garbled = e.value("garbled", false);
    return r;
}

}  // namespace qc
