#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ifacediv/latency_model.hpp"
#include "ifacediv/strategy_eval.hpp"

namespace ifacediv {

/// Timestamped one-way latency measurements of a single interface, one record
/// per probe. Probe indices are strictly increasing.
struct Trace {
    std::string interface_name;
    std::vector<std::pair<std::int64_t, LatencySample>> records;
};

/// Reads a trace CSV: two columns `probe_index,latency_ms`, an empty latency
/// field marks a lost probe, and an optional header line is detected
/// automatically. Throws IoError / ParseError (with line number).
Trace load_trace(const std::filesystem::path& path);

/// Probe-synchronized outcome rows across several traces.
struct AlignedRows {
    std::vector<std::string> interface_names;
    std::vector<std::vector<LatencySample>> rows;  ///< rows[probe][interface]
    std::size_t dropped_probes = 0;                ///< probes missing from some trace
};

/// Inner-joins the traces on probe_index; probes absent from any trace are
/// dropped and counted. Throws NoOverlap when the join is empty.
AlignedRows align(std::span<const Trace> traces);

/// Message outcome of one probe row under a strategy: cloning takes the
/// earliest delivered latency, k-of-N the k-th smallest, weighted the
/// fraction-accumulation decode time. Weighted allocations reuse the trace
/// latencies as-is; measured traces carry no packet-size scaling.
LatencySample playback_row(std::span<const LatencySample> row, const Strategy& strategy);

/// Empirical latency-reliability curves of the strategies replayed over the
/// aligned rows, in strategy order.
std::vector<ReliabilityCurve> playback(const AlignedRows& rows,
                                       std::span<const Strategy> strategies);

/// Largest absolute gap between two curves over the union of their
/// breakpoints plus optional extra grid points; the plateau difference
/// (x -> infinity) is always included.
double ks_distance(const ReliabilityCurve& a, const ReliabilityCurve& b,
                   std::span<const double> extra_grid = {});

struct StrategyPlayback {
    std::string label;
    ReliabilityCurve measured;   ///< replayed joint outcomes
    ReliabilityCurve predicted;  ///< per-interface marginals composed under independence
    double ks = 0.0;
};

struct PlaybackReport {
    std::vector<StrategyPlayback> strategies;
    std::size_t rows_used = 0;
    std::size_t dropped_probes = 0;
};

/// Full playback-versus-prediction comparison: aligns the traces, replays
/// every strategy, builds per-interface empirical curves from the same
/// aligned rows, composes them through the outcome-enumeration combinators
/// (an independence assumption), and reports the KS gap per strategy.
PlaybackReport predict_from_marginals(std::span<const Trace> traces,
                                      std::span<const Strategy> strategies);

}  // namespace ifacediv
