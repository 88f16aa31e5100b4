#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ifacediv/latency_model.hpp"

namespace ifacediv {

/// Per-interface fractions of the coded payload. An outcome decodes when the
/// fractions of the received packets sum to at least decode_min; gamma_d is
/// the per-interface cap and the total-redundancy feasibility bound used by
/// the optimizer.
struct AllocationVector {
    std::vector<double> gamma;
    double gamma_d = 1.05;
    double decode_min = 1.0;

    std::size_t size() const { return gamma.size(); }
    /// Throws std::invalid_argument on violated bounds (N >= 1,
    /// 0 <= gamma_i <= gamma_d, decode_min > 0).
    void validate() const;
};

struct Cloning {};
struct KofN {
    int k = 1;
};
struct Weighted {
    AllocationVector alloc;
};
using Strategy = std::variant<Cloning, KofN, Weighted>;

/// "cloning", "2-of-5", "weighted".
std::string strategy_label(const Strategy& strategy, std::size_t n_interfaces);
/// Accepts "cloning", "kofn:K" and "weighted:g1,g2,...".
Strategy parse_strategy(const std::string& text);
/// Per-interface payload fractions implied by a strategy (gamma_i = 1 for
/// cloning, 1/k for k-of-N, the allocation itself for weighted) together with
/// the decode threshold, for n_interfaces interfaces.
AllocationVector strategy_allocation(const Strategy& strategy, std::size_t n_interfaces);

/// Loss outcome for N interfaces: bit i set means the packet sent on
/// interface i was received.
using Outcome = std::uint32_t;

/// Tolerance used when comparing accumulated fraction sums against the decode
/// threshold; absorbs floating-point error in sums like k * (1/k).
inline constexpr double kDecodeEps = 1e-9;

/// 1 iff the fractions of the received packets reach the decode threshold.
bool decode_indicator(Outcome outcome, const AllocationVector& alloc);

/// Combined latency-reliability of a weighted-splitting strategy, by exact
/// enumeration of the loss-outcome space: sum over all outcomes that decode of
/// the product of per-interface delivery/loss probabilities at deadline x.
/// Interfaces with gamma_i == 0 send nothing and are excluded from the
/// enumeration (their factor is 1). At most 24 interfaces with nonzero gamma.
double eval_weighted(std::span<const ReliabilityCurve> curves, const AllocationVector& alloc,
                     double payload_bytes, double x_ms);

/// Same enumeration with the decode indicator forced to 1. Mathematically 1;
/// exposed as a bookkeeping check of the outcome-probability accounting.
double total_outcome_probability(std::span<const ReliabilityCurve> curves,
                                 const AllocationVector& alloc, double payload_bytes,
                                 double x_ms);

/// Cloning over N interfaces: every interface carries the full payload and a
/// single delivery decodes, so F = 1 - prod(1 - F_i(x, B)).
double eval_cloning(std::span<const ReliabilityCurve> curves, double payload_bytes, double x_ms);

/// k-out-of-N splitting: gamma_i = 1/k on every interface, any k receptions
/// decode. Evaluated through the general outcome enumeration.
double eval_k_of_n(std::span<const ReliabilityCurve> curves, int k, double payload_bytes,
                   double x_ms);

/// Closed form for N identical interfaces with per-packet reliability f:
/// sum_{r=k}^{N} C(N,r) f^r (1-f)^{N-r}. Kept separate from the enumeration
/// path so the two can cross-check each other.
double k_of_n_identical(double f, int k, int n);

struct FragmentAssignment {
    std::int64_t fragment_count = 0;
    double packet_bytes = 0.0;
};

/// Number of coded fragments and resulting packet size per interface, for
/// fragments of fragment_bytes each: ceil(gamma_i * B / fragment_bytes)
/// fragments grouped into a single packet. Zero-gamma interfaces get (0, 0).
std::vector<FragmentAssignment> fragment_plan(const AllocationVector& alloc,
                                              double payload_bytes, double fragment_bytes);

namespace detail {

/// Core of the outcome enumeration: f[j] and gamma[j] describe the active
/// (nonzero-gamma) interfaces; returns the probability mass of outcomes whose
/// received fractions reach decode_min. Summation runs in ascending outcome
/// order for reproducibility. decode_min <= 0 counts every outcome.
double sum_decodable_outcomes(std::span<const double> f, std::span<const double> gamma,
                              double decode_min);

}  // namespace detail

}  // namespace ifacediv
