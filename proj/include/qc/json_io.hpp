#pragma once

#include "qc/poly.hpp"

#include <json.hpp>

namespace qc {

// {"vars":[...], "terms":[{"exp":[...], "num":"...", "den":"..."}]} with terms in canonical order
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& r);

}  // namespace qc
