#include "ifacediv/presets.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ifacediv {

const std::vector<InterfaceProfile>& builtin_profiles() {
    static const std::vector<InterfaceProfile> profiles = {
        {"GPRS", 0.70, 400.0, 0.984, 0.1},
        {"EDGE", 0.46, 230.0, 0.983, 0.1},
        {"UMTS", 0.43, 200.0, 0.982, 0.1},
        {"HSDPA", 0.35, 178.0, 0.981, 0.1},
        {"LTE", 0.0067, 41.0, 0.980, 0.1},
    };
    return profiles;
}

const InterfaceProfile& builtin_profile(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    for (const InterfaceProfile& p : builtin_profiles()) {
        if (p.name == upper) {
            return p;
        }
    }
    throw std::invalid_argument("unknown interface profile '" + name +
                                "' (available: GPRS, EDGE, UMTS, HSDPA, LTE)");
}

OptimizationTarget ScenarioPreset::targets_with(bool include_starred) const {
    OptimizationTarget t = targets;
    if (include_starred) {
        for (const auto& [latency, weight] : starred) {
            t.latencies_ms.push_back(latency);
            t.weights.push_back(weight);
        }
    }
    t.validate();
    return t;
}

ScenarioPreset scenario_preset(char id) {
    ScenarioPreset preset;
    preset.id = static_cast<char>(std::toupper(static_cast<unsigned char>(id)));
    switch (preset.id) {
        case 'A':
            preset.profiles = {builtin_profile("UMTS"), builtin_profile("GPRS")};
            preset.targets = expected_latency_targets(1000.0, 100);
            break;
        case 'B':
            preset.profiles = {builtin_profile("LTE"), builtin_profile("HSDPA"),
                               builtin_profile("UMTS"), builtin_profile("EDGE"),
                               builtin_profile("GPRS")};
            preset.targets.latencies_ms = {100.0, 400.0};
            preset.targets.weights = {1.0, 10.0};
            preset.starred = {{900.0, 100.0}};
            break;
        case 'C':
            preset.profiles = {builtin_profile("HSDPA"), builtin_profile("HSDPA"),
                               builtin_profile("GPRS"), builtin_profile("GPRS"),
                               builtin_profile("GPRS")};
            preset.targets.latencies_ms = {500.0};
            preset.targets.weights = {1.0};
            break;
        default:
            throw std::invalid_argument("unknown scenario preset; expected A, B or C");
    }
    return preset;
}

}  // namespace ifacediv
