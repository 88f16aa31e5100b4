#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ifacediv/latency_model.hpp"
#include "ifacediv/strategy_eval.hpp"

namespace ifacediv {

/// Monte Carlo simulation of one multi-interface transmission strategy,
/// used as an independent check of the analytic outcome enumeration.
struct SimConfig {
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
    std::vector<InterfaceProfile> profiles;
    Strategy strategy;
    double payload_bytes = 0.0;
};

/// Message completion time for one realized outcome row: the delivered
/// packets are sorted by latency and their fractions accumulated until the
/// decode threshold is reached; the crossing packet's latency is the decode
/// time. Lost when the total delivered fraction never reaches the threshold.
LatencySample decode_time(std::span<const LatencySample> packet_latencies,
                          std::span<const double> gamma, double decode_min);

/// Per-trial message outcomes. Each trial draws, for every interface with
/// gamma_i > 0, a Bernoulli(p_succ) delivery and a Gaussian latency with
/// mu = mean_latency(profile, gamma_i*B), sigma = sigma_ratio*mu, resampling
/// negative draws. Trials are generated in fixed-size batches with seeds
/// derived from (seed, batch), so results are bit-identical for any worker
/// count.
std::vector<LatencySample> simulate_samples(const SimConfig& config);

/// Empirical latency-reliability curve over the simulated trials.
ReliabilityCurve simulate_strategy(const SimConfig& config);

}  // namespace ifacediv
