#pragma once

#include <cstdint>
#include <string>

namespace qc {

struct Budget {
    std::uint64_t max_steps = 2000000;
    double max_seconds = 1800;
};

struct Config {
    Budget groebner;
    Budget radical;
    int desing_depth = 6;
    int series_order = 12;
    std::uint64_t integration_max_steps = 2000000;
    double integration_tolerance = 1e-11;
    std::uint64_t random_seed = 20240611;

    // Reads the file named by QC_CONFIG (or the bundled config/budgets.json), then applies
    // environment overrides QC_GB_STEPS, QC_GB_SECONDS, QC_RADICAL_STEPS, QC_RADICAL_SECONDS,
    // QC_DESING_DEPTH, QC_SERIES_ORDER, QC_INTEGRATION_STEPS, QC_SEED.
    static Config load();
    static Config from_file(const std::string& path);
};

const Config& config();

}  // namespace qc
