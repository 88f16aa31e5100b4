#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately re-derive results through different routes than the
// production code.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifacediv/latency_model.hpp"
#include "ifacediv/strategy_eval.hpp"

namespace oracles {

/// Combined reliability by direct depth-first expansion over interfaces
/// (received / lost branches), instead of flat outcome-mask enumeration.
/// Zero-gamma interfaces are expanded like any other; their branches cancel.
double recursive_eval_weighted(std::span<const ifacediv::ReliabilityCurve> curves,
                               const ifacediv::AllocationVector& alloc, double payload_bytes,
                               double x_ms);

/// Decode time of one packet row by exhaustive search over all subsets of
/// delivered packets whose fractions decode: the minimum over such subsets of
/// the subset's slowest packet.
ifacediv::LatencySample subset_decode_time(std::span<const ifacediv::LatencySample> packets,
                                           std::span<const double> gamma, double decode_min);

/// Monte Carlo estimate of E[max(X_A, X_B)] for independent Gaussians.
double mc_expected_max(double mu_a, double sigma_a, double mu_b, double sigma_b,
                       std::uint64_t n_samples, std::uint64_t seed);

/// Truncated expected latency integral(0..horizon) of (1 - F(x)) dx by
/// fine-step trapezoid quadrature over a reliability evaluator.
template <typename F>
double truncated_expected_latency(F&& reliability, double horizon, int steps = 200000) {
    double integral = 0.0;
    double prev = 1.0 - reliability(0.0);
    for (int i = 1; i <= steps; ++i) {
        double x = horizon * static_cast<double>(i) / steps;
        double v = 1.0 - reliability(x);
        integral += 0.5 * (prev + v) * (horizon / steps);
        prev = v;
    }
    return integral;
}

/// Checks a JSON document against the subset of JSON Schema used by the
/// schemas shipped in schemas/: type, properties, required, items, enum,
/// additionalProperties. Returns an empty string on success, else the first
/// violation found.
std::string validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                                    const std::string& where = "$");

}  // namespace oracles
