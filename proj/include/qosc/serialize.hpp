#pragma once

#include "json.hpp"
#include "qosc/qschrodinger.hpp"

namespace qosc {

// Schema: {"params": {"hbar", "m", "lambda"}, "terms": [{"i","j","re","im"}]}
// with terms sorted by (i, j).
nlohmann::json poly_to_json(const BivarPolynomial& p);
BivarPolynomial poly_from_json(const nlohmann::json& j);

}  // namespace qosc
