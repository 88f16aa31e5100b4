#include "ifacediv/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifacediv/errors.hpp"
#include "ifacediv/normal.hpp"
#include "ifacediv/parallel.hpp"

namespace ifacediv {

void OptimizationTarget::validate() const {
    if (latencies_ms.empty() || latencies_ms.size() != weights.size()) {
        throw std::invalid_argument("targets need equal-length, nonempty latency/weight lists");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (double l : latencies_ms) {
        if (!std::isfinite(l) || l <= prev) {
            throw std::invalid_argument("target latencies must be finite and strictly increasing");
        }
        prev = l;
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("target weights must be positive");
        }
    }
}

OptimizationTarget expected_latency_targets(double horizon_ms, int points) {
    if (!(horizon_ms > 0.0)) {
        throw std::invalid_argument("horizon must be positive");
    }
    if (points < 2) {
        throw std::invalid_argument("expected-latency grid needs at least 2 points");
    }
    OptimizationTarget t;
    t.latencies_ms.reserve(points);
    t.weights.assign(points, 1.0 / static_cast<double>(points));
    for (int r = 1; r <= points; ++r) {
        t.latencies_ms.push_back(horizon_ms * static_cast<double>(r) /
                                 static_cast<double>(points));
    }
    return t;
}

std::vector<double> GridSpec::points(double gamma_d) const {
    if (!(delta_gamma > 0.0) || !(delta_gamma <= gamma_d)) {
        throw std::invalid_argument("delta_gamma must lie in (0, gamma_d]");
    }
    std::vector<double> pts;
    for (int k = 0;; ++k) {
        double g = static_cast<double>(k) * delta_gamma;
        if (g >= gamma_d - 1e-12 * gamma_d) {
            break;
        }
        pts.push_back(g);
    }
    pts.push_back(gamma_d);  // endpoint exact, independent of step rounding
    return pts;
}

double objective(std::span<const ReliabilityCurve> curves, const AllocationVector& alloc,
                 double payload_bytes, const OptimizationTarget& target) {
    target.validate();
    double sum = 0.0;
    for (std::size_t r = 0; r < target.size(); ++r) {
        sum += eval_weighted(curves, alloc, payload_bytes, target.latencies_ms[r]) *
               target.weights[r];
    }
    return sum;
}

namespace {

struct Candidate {
    double objective = -std::numeric_limits<double>::infinity();
    double gamma_sum = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> grid_index;

    /// Strict "better than" order: larger objective, then smaller total
    /// allocation, then lexicographically smaller gamma vector.
    bool better_than(const Candidate& other) const {
        if (objective != other.objective) {
            return objective > other.objective;
        }
        if (gamma_sum != other.gamma_sum) {
            return gamma_sum < other.gamma_sum;
        }
        return grid_index < other.grid_index;
    }
};

/// Precomputed curve values F_i(l_r, g*B) for every interface i and grid
/// value g; layout table[i][grid_idx * R + r].
struct ValueTable {
    std::size_t n_targets = 0;
    std::vector<std::vector<double>> per_interface;
};

ValueTable build_table(std::span<const ReliabilityCurve> curves, const std::vector<double>& grid,
                       double payload_bytes, const OptimizationTarget& target) {
    ValueTable table;
    table.n_targets = target.size();
    table.per_interface.resize(curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
        auto& row = table.per_interface[i];
        row.resize(grid.size() * target.size());
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            for (std::size_t r = 0; r < target.size(); ++r) {
                row[gi * target.size() + r] =
                    curves[i].eval(target.latencies_ms[r], grid[gi] * payload_bytes);
            }
        }
    }
    return table;
}

}  // namespace

SplitSolution brute_force_optimize(std::span<const ReliabilityCurve> curves,
                                   double payload_bytes, const OptimizationTarget& target,
                                   const GridSpec& grid, double gamma_d, double decode_min) {
    target.validate();
    if (curves.empty()) {
        throw EmptyInput("optimizer needs at least one interface");
    }
    const std::size_t n = curves.size();
    const std::vector<double> pts = grid.points(gamma_d);
    const std::size_t n_pts = pts.size();
    const ValueTable table = build_table(curves, pts, payload_bytes, target);

    // One task per leading grid index; each task scans its slice with a
    // plain odometer over the remaining interfaces.
    std::vector<Candidate> task_best(n_pts);
    std::vector<std::uint64_t> task_evals(n_pts, 0);

    parallel_for(n_pts, [&](std::size_t lead) {
        Candidate best;
        std::uint64_t evals = 0;
        std::vector<std::size_t> idx(n, 0);
        idx[0] = lead;
        std::vector<double> f;
        std::vector<double> gam;
        f.reserve(n);
        gam.reserve(n);
        while (true) {
            double gamma_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                gamma_sum += pts[idx[i]];
            }
            if (gamma_sum >= gamma_d - 1e-12) {
                // Evaluate the weighted objective target by target, reusing
                // the precomputed curve values of the active interfaces.
                double obj = 0.0;
                for (std::size_t r = 0; r < target.size(); ++r) {
                    f.clear();
                    gam.clear();
                    for (std::size_t i = 0; i < n; ++i) {
                        if (pts[idx[i]] > 0.0) {
                            f.push_back(table.per_interface[i][idx[i] * table.n_targets + r]);
                            gam.push_back(pts[idx[i]]);
                        }
                    }
                    obj += detail::sum_decodable_outcomes(f, gam, decode_min) *
                           target.weights[r];
                }
                ++evals;
                Candidate cand;
                cand.objective = obj;
                cand.gamma_sum = gamma_sum;
                cand.grid_index = idx;
                if (cand.better_than(best)) {
                    best = std::move(cand);
                }
            }
            // Advance the odometer over interfaces 1..n-1.
            std::size_t pos = n - 1;
            while (pos > 0) {
                if (++idx[pos] < n_pts) {
                    break;
                }
                idx[pos] = 0;
                --pos;
            }
            if (pos == 0) {
                break;
            }
        }
        task_best[lead] = std::move(best);
        task_evals[lead] = evals;
    });

    Candidate winner;
    std::uint64_t evaluations = 0;
    for (std::size_t lead = 0; lead < n_pts; ++lead) {
        evaluations += task_evals[lead];
        if (task_best[lead].better_than(winner)) {
            winner = task_best[lead];
        }
    }
    if (winner.grid_index.empty()) {
        throw InfeasibleGrid("no grid point satisfies sum(gamma) >= gamma_d");
    }

    SplitSolution sol;
    sol.gamma_star.gamma.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.gamma_star.gamma.push_back(pts[winner.grid_index[i]]);
    }
    sol.gamma_star.gamma_d = gamma_d;
    sol.gamma_star.decode_min = decode_min;
    sol.objective_value = winner.objective;
    sol.evaluations = evaluations;
    return sol;
}

double expected_max_latency(double mu_a, double sigma_a, double mu_b, double sigma_b) {
    if (!(sigma_a >= 0.0) || !(sigma_b >= 0.0)) {
        throw std::invalid_argument("sigmas must be nonnegative");
    }
    double xi = std::hypot(sigma_a, sigma_b);
    if (xi == 0.0) {
        return std::max(mu_a, mu_b);
    }
    double eta = (mu_a - mu_b) / xi;
    return mu_a * normal_cdf(eta) + mu_b * normal_cdf(-eta) + xi * normal_pdf(eta);
}

namespace {

/// Sigma of the two interfaces frozen at the equal-split point.
struct FrozenSigma {
    double sigma_a = 0.0;
    double sigma_b = 0.0;
};

FrozenSigma frozen_sigma(const InterfaceProfile& a, const InterfaceProfile& b,
                         double payload_bytes, double total) {
    FrozenSigma s;
    s.sigma_a = a.sigma_ratio * mean_latency(a, (total / 2.0) * payload_bytes);
    s.sigma_b = b.sigma_ratio * mean_latency(b, (total / 2.0) * payload_bytes);
    return s;
}

}  // namespace

SplitSolution analytic_two_split(const InterfaceProfile& a, const InterfaceProfile& b,
                                 double payload_bytes, double total) {
    a.validate();
    b.validate();
    if (!(payload_bytes > 0.0)) {
        throw std::invalid_argument("payload_bytes must be positive");
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("total split fraction must be positive");
    }

    SplitSolution sol;
    const double alpha_sum = a.alpha + b.alpha;
    const FrozenSigma sig = frozen_sigma(a, b, payload_bytes, total);
    const double xi = std::hypot(sig.sigma_a, sig.sigma_b);

    double gamma;
    if (alpha_sum == 0.0) {
        // No size dependence: every split has the same pair of means.
        gamma = total / 2.0;
        sol.degenerate = true;
    } else {
        // Equal-mean base point, shifted along the frozen-sigma stationarity
        // condition Phi(eta) = alpha_b / (alpha_a + alpha_b).
        double base = (b.alpha * payload_bytes * total + b.beta - a.beta) /
                      (alpha_sum * payload_bytes);
        double shift = 0.0;
        if (xi > 0.0) {
            double eta_star = inverse_normal_cdf(b.alpha / alpha_sum);
            shift = 2.0 * xi * eta_star / (alpha_sum * payload_bytes);
        }
        gamma = std::clamp(base + shift, 0.0, total);
    }

    double mu_a = mean_latency(a, gamma * payload_bytes);
    double mu_b = mean_latency(b, (total - gamma) * payload_bytes);
    sol.gamma_star.gamma = {gamma, total - gamma};
    sol.gamma_scalar = gamma;
    sol.expected_latency_ms = expected_max_latency(mu_a, sig.sigma_a, mu_b, sig.sigma_b);
    sol.objective_value = sol.expected_latency_ms;
    sol.evaluations = 1;
    return sol;
}

TwoSplitScan two_split_grid_scan(const InterfaceProfile& a, const InterfaceProfile& b,
                                 double payload_bytes, double total, double step) {
    a.validate();
    b.validate();
    if (!(step > 0.0 && step <= total)) {
        throw std::invalid_argument("scan step must lie in (0, total]");
    }
    TwoSplitScan best;
    best.expected_latency_ms = std::numeric_limits<double>::infinity();
    const auto steps = static_cast<std::int64_t>(std::round(total / step));
    for (std::int64_t i = 0; i <= steps; ++i) {
        double gamma = std::min(total, static_cast<double>(i) * step);
        double mu_a = mean_latency(a, gamma * payload_bytes);
        double mu_b = mean_latency(b, (total - gamma) * payload_bytes);
        double l = expected_max_latency(mu_a, a.sigma_ratio * mu_a, mu_b, b.sigma_ratio * mu_b);
        if (l < best.expected_latency_ms) {
            best.expected_latency_ms = l;
            best.gamma = gamma;
        }
    }
    return best;
}

}  // namespace ifacediv
