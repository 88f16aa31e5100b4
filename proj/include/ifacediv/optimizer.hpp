#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ifacediv/latency_model.hpp"
#include "ifacediv/strategy_eval.hpp"

namespace ifacediv {

/// Target latencies and their importance weights for the allocation search.
struct OptimizationTarget {
    std::vector<double> latencies_ms;
    std::vector<double> weights;

    std::size_t size() const { return latencies_ms.size(); }
    /// Throws std::invalid_argument unless lengths match, latencies are
    /// strictly increasing and weights are positive.
    void validate() const;
};

/// Uniform target grid {h/points, 2h/points, ..., h} with equal weights
/// 1/points. Maximizing the weighted reliability sum over this grid is a
/// Riemann approximation of minimizing the expected latency truncated at the
/// horizon.
OptimizationTarget expected_latency_targets(double horizon_ms, int points);

/// Per-interface search grid {0, delta, 2*delta, ..., gamma_d}; both
/// endpoints are always included exactly.
struct GridSpec {
    double delta_gamma = 0.05;

    std::vector<double> points(double gamma_d) const;
};

struct SplitSolution {
    AllocationVector gamma_star;
    double objective_value = 0.0;
    std::uint64_t evaluations = 0;
    /// Set by the analytic two-interface split only.
    double gamma_scalar = std::numeric_limits<double>::quiet_NaN();
    double expected_latency_ms = std::numeric_limits<double>::quiet_NaN();
    /// True when the profiles carry no size dependence and every split is
    /// equivalent; the returned split is then the midpoint.
    bool degenerate = false;
};

/// Weighted sum of the combined reliability at each target latency.
double objective(std::span<const ReliabilityCurve> curves, const AllocationVector& alloc,
                 double payload_bytes, const OptimizationTarget& target);

/// Exhaustive search over the allocation grid, restricted to feasible points
/// (every gamma_i <= gamma_d, sum gamma_i >= gamma_d). Ties are broken toward
/// the smaller total allocation, then the lexicographically smallest vector,
/// so the result is deterministic for any worker count.
SplitSolution brute_force_optimize(std::span<const ReliabilityCurve> curves,
                                   double payload_bytes, const OptimizationTarget& target,
                                   const GridSpec& grid, double gamma_d = 1.05,
                                   double decode_min = 1.0);

/// First moment of max(X_A, X_B) for independent Gaussians (Clark's
/// formula): mu_a*Phi(eta) + mu_b*Phi(-eta) + xi*phi(eta) with
/// xi = sqrt(sigma_a^2 + sigma_b^2), eta = (mu_a - mu_b)/xi. Exact in the
/// xi -> 0 limit (returns max(mu_a, mu_b)).
double expected_max_latency(double mu_a, double sigma_a, double mu_b, double sigma_b);

/// Closed-form split of a `total` payload fraction between two interfaces
/// minimizing the expected completion time of the pair. Interface a carries
/// gamma*B bytes, b carries (total-gamma)*B. The per-interface deviations are
/// frozen at their equal-split (gamma = total/2) values, matching the
/// constant-sigma assumption behind the closed form; gamma is clamped to
/// [0, total]. When alpha_a + alpha_b == 0 every split has the same mean and
/// the midpoint is returned with the degenerate flag set.
SplitSolution analytic_two_split(const InterfaceProfile& a, const InterfaceProfile& b,
                                 double payload_bytes, double total);

struct TwoSplitScan {
    double gamma = 0.0;
    double expected_latency_ms = 0.0;
};

/// Reference scan for analytic_two_split: evaluates the expected pair
/// latency on a uniform gamma grid with sigma recomputed at every point
/// (sigma = sigma_ratio * mu), and returns the argmin.
TwoSplitScan two_split_grid_scan(const InterfaceProfile& a, const InterfaceProfile& b,
                                 double payload_bytes, double total, double step = 0.001);

}  // namespace ifacediv
