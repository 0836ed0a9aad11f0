#pragma once

#include "ellgen/genera.hpp"

#include <json.hpp>

#include <string>

namespace ellgen {

/// {"kind", "method", "weight", "group", "manifold", "bundle", "order",
///  "coefficients": [{"power": "3/2", "value": "-1/1"}], "checks": [...]}
nlohmann::json report_to_json(const GenusReport& r);

/// Header lines, one "q^k: value" line per coefficient, then the checks.
std::string report_to_text(const GenusReport& r);

} // namespace ellgen
