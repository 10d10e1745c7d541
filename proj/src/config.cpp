#include "qc/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>

namespace qc {

namespace {

void read_budget(const nlohmann::json& j, const char* key, Budget& b) {
    if (!j.contains(key)) return;
    const auto& s = j.at(key);
    if (s.contains("max_steps")) b.max_steps = s.at("max_steps").get<std::uint64_t>();
    if (s.contains("max_seconds")) b.max_seconds = s.at("max_seconds").get<double>();
}

template <class T>
void env_override(const char* name, T& target) {
    const char* v = std::getenv(name);
    if (!v || !*v) return;
    if constexpr (std::is_floating_point_v<T>) {
        target = std::strtod(v, nullptr);
    } else {
        target = static_cast<T>(std::strtoull(v, nullptr, 10));
    }
}

}  // namespace

Config Config::from_file(const std::string& path) {
    Config c;
    std::ifstream in(path);
    if (!in) return c;
    nlohmann::json j = nlohmann::json::parse(in);
    read_budget(j, "groebner", c.groebner);
    read_budget(j, "radical", c.radical);
    if (j.contains("desing")) {
        const auto& d = j.at("desing");
        if (d.contains("depth")) c.desing_depth = d.at("depth").get<int>();
        if (d.contains("series_order")) c.series_order = d.at("series_order").get<int>();
    }
    if (j.contains("integration")) {
        const auto& d = j.at("integration");
        if (d.contains("max_steps")) c.integration_max_steps = d.at("max_steps").get<std::uint64_t>();
        if (d.contains("tolerance")) c.integration_tolerance = d.at("tolerance").get<double>();
    }
    if (j.contains("random_seed")) c.random_seed = j.at("random_seed").get<std::uint64_t>();
    return c;
}

Config Config::load() {
    const char* path = std::getenv("QC_CONFIG");
#ifdef QC_CONFIG_FILE
    Config c = from_file(path && *path ? path : QC_CONFIG_FILE);
#else
    Config c = path ? from_file(path) : Config{};
#endif
    env_override("QC_GB_STEPS", c.groebner.max_steps);
    env_override("QC_GB_SECONDS", c.groebner.max_seconds);
    env_override("QC_RADICAL_STEPS", c.radical.max_steps);
    env_override("QC_RADICAL_SECONDS", c.radical.max_seconds);
    env_override("QC_DESING_DEPTH", c.desing_depth);
    env_override("QC_SERIES_ORDER", c.series_order);
    env_override("QC_INTEGRATION_STEPS", c.integration_max_steps);
    env_override("QC_SEED", c.random_seed);
    return c;
}

const Config& config() {
    static const Config c = Config::load();
    return c;
}

}  // namespace qc
