#pragma once

#include <json.hpp>

#include "cubelens/l4_analysis.hpp"

namespace cubelens {

/// Reads {"terms": [{"n": "<decimal>", "re": "p/q", "im": "p/q"}, ...]}.
/// "re" and "im" default to "0" when absent. Throws std::invalid_argument on
/// malformed input or a repeated frequency.
CoeffPoly poly_from_json(const nlohmann::json& doc);
nlohmann::json poly_to_json(const CoeffPoly& f);

}  // namespace cubelens
