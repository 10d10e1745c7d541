#pragma once

#include "qc/poly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qc {

std::string fixture_path(const std::string& relative);
nlohmann::json load_fixture(const std::string& relative);

// stored constant L_index; the corrected form is used when one is recorded and corrected is set
MultiPoly reference_constant(int index, bool corrected = true);
bool reference_constant_has_correction(int index);

struct ReferenceIdeal {
    std::string name;
    std::vector<MultiPoly> generators;
    bool verified = false;
    bool garbled = false;
};
ReferenceIdeal reference_ideal(const std::string& name);

}  // namespace qc
