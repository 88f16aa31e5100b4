#pragma once

#include <string>
#include <vector>

#include "ifacediv/latency_model.hpp"
#include "ifacediv/optimizer.hpp"

namespace ifacediv {

/// Built-in cellular interface profiles (GPRS, EDGE, UMTS, HSDPA, LTE) from
/// the SUNSEED field-measurement regression.
const std::vector<InterfaceProfile>& builtin_profiles();

/// Lookup by case-insensitive name; throws std::invalid_argument if unknown.
const InterfaceProfile& builtin_profile(const std::string& name);

/// Ready-made evaluation scenarios.
///   A: UMTS + GPRS, expected-latency objective over a 1 s horizon.
///   B: LTE/HSDPA/UMTS/EDGE/GPRS, targets 0.1 s (w=1), 0.4 s (w=10) and an
///      optional starred 0.9 s (w=100).
///   C: HSDPA x2 + GPRS x3, single target 0.5 s.
struct ScenarioPreset {
    char id = '?';
    std::vector<InterfaceProfile> profiles;
    double payload_bytes = 1500.0;
    OptimizationTarget targets;
    /// Extra (latency, weight) pairs enabled by the starred variant; empty
    /// for scenarios without one.
    std::vector<std::pair<double, double>> starred;

    /// Targets with the starred pairs appended (when requested and present).
    OptimizationTarget targets_with(bool include_starred) const;
};

ScenarioPreset scenario_preset(char id);

}  // namespace ifacediv
