#pragma once

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace qc {

struct ReproduceOptions {
    // also run the checks that depend on the ambiguous T3 generator list
    bool include_garbled = false;
};

// Each run returns {"target", "pass", ...evidence}; "budget_exhausted": true marks a Groebner run
// that hit its budget.
struct ReproduceTarget {
    std::string name;
    std::string description;
    std::function<nlohmann::json(const ReproduceOptions&)> run;
};

const std::vector<ReproduceTarget>& reproduce_targets();
// throws std::out_of_range for an unknown name
nlohmann::json run_target(const std::string& name, const ReproduceOptions& opt = {});

}  // namespace qc
