#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "ifacediv/latency_model.hpp"

namespace ifacediv {

/// Formats with 12 significant digits, the precision carried by all CSV/JSON
/// outputs.
std::string format_sig12(double value);

/// Rounds through the 12-significant-digit text form, so numbers stored in
/// JSON match the CSV representation exactly.
double round_sig12(double value);

/// Writes `x_ms,reliability` rows (with header) for an empirical curve.
void write_curve_csv(std::ostream& out, const ReliabilityCurve& curve);

/// Curve as {"x_ms": [...], "reliability": [...], "plateau": p}; when the
/// curve holds more than max_points breakpoints they are decimated evenly
/// (first and last always kept).
nlohmann::ordered_json curve_to_json(const ReliabilityCurve& curve,
                                     std::size_t max_points = 512);

}  // namespace ifacediv
