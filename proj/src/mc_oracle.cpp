#include "ifacediv/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ifacediv/errors.hpp"
#include "ifacediv/normal.hpp"
#include "ifacediv/parallel.hpp"

namespace ifacediv {

namespace {

constexpr std::uint64_t kBatchTrials = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Uniform draw strictly inside (0,1); 53-bit resolution.
double uniform01(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

struct PacketModel {
    double p_succ = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
};

}  // namespace

LatencySample decode_time(std::span<const LatencySample> packet_latencies,
                          std::span<const double> gamma, double decode_min) {
    if (packet_latencies.size() != gamma.size()) {
        throw DimensionMismatch("packet row width != allocation length");
    }
    // (latency, interface index); the index keeps the sort total.
    std::vector<std::pair<double, std::size_t>> delivered;
    delivered.reserve(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] > 0.0 && !packet_latencies[i].is_lost()) {
            delivered.emplace_back(packet_latencies[i].latency_ms(), i);
        }
    }
    std::sort(delivered.begin(), delivered.end());
    double received = 0.0;
    for (const auto& [latency, idx] : delivered) {
        received += gamma[idx];
        if (received >= decode_min - kDecodeEps) {
            return LatencySample::delivered(latency);
        }
    }
    return LatencySample::lost();
}

std::vector<LatencySample> simulate_samples(const SimConfig& config) {
    if (config.n_trials < 1) {
        throw std::invalid_argument("n_trials must be >= 1");
    }
    for (const InterfaceProfile& p : config.profiles) {
        p.validate();
    }
    AllocationVector alloc = strategy_allocation(config.strategy, config.profiles.size());
    alloc.validate();

    std::vector<PacketModel> packets;
    std::vector<double> gamma_active;
    for (std::size_t i = 0; i < config.profiles.size(); ++i) {
        if (alloc.gamma[i] > 0.0) {
            PacketModel pm;
            pm.p_succ = config.profiles[i].p_succ;
            pm.mu = mean_latency(config.profiles[i], alloc.gamma[i] * config.payload_bytes);
            pm.sigma = config.profiles[i].sigma_ratio * pm.mu;
            packets.push_back(pm);
            gamma_active.push_back(alloc.gamma[i]);
        }
    }

    std::vector<LatencySample> results(config.n_trials, LatencySample::lost());
    const std::uint64_t n_batches = (config.n_trials + kBatchTrials - 1) / kBatchTrials;

    parallel_for(n_batches, [&](std::size_t batch) {
        std::mt19937_64 eng(splitmix64(config.seed ^ splitmix64(batch)));
        const std::uint64_t begin = static_cast<std::uint64_t>(batch) * kBatchTrials;
        const std::uint64_t end = std::min(begin + kBatchTrials, config.n_trials);
        std::vector<LatencySample> row(packets.size(), LatencySample::lost());
        for (std::uint64_t t = begin; t < end; ++t) {
            for (std::size_t j = 0; j < packets.size(); ++j) {
                const PacketModel& pm = packets[j];
                if (uniform01(eng) < pm.p_succ) {
                    double latency;
                    do {
                        latency = pm.sigma > 0.0
                                      ? pm.mu + pm.sigma * inverse_normal_cdf(uniform01(eng))
                                      : pm.mu;
                    } while (latency < 0.0);
                    row[j] = LatencySample::delivered(latency);
                } else {
                    row[j] = LatencySample::lost();
                }
            }
            results[t] = decode_time(row, gamma_active, alloc.decode_min);
        }
    });
    return results;
}

ReliabilityCurve simulate_strategy(const SimConfig& config) {
    return empirical_from_samples(simulate_samples(config));
}

}  // namespace ifacediv
