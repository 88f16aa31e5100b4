#include "ifacediv/strategy_eval.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ifacediv/errors.hpp"

namespace ifacediv {

namespace {

constexpr int kMaxEnumeratedInterfaces = 24;

/// Active-interface view of an allocation: indices with gamma > 0.
struct ActiveSet {
    std::vector<double> gamma;
    std::vector<std::size_t> index;
};

ActiveSet active_interfaces(const AllocationVector& alloc) {
    ActiveSet a;
    for (std::size_t i = 0; i < alloc.gamma.size(); ++i) {
        if (alloc.gamma[i] > 0.0) {
            a.gamma.push_back(alloc.gamma[i]);
            a.index.push_back(i);
        }
    }
    if (a.gamma.size() > static_cast<std::size_t>(kMaxEnumeratedInterfaces)) {
        throw EnumerationTooLarge("outcome enumeration limited to " +
                                  std::to_string(kMaxEnumeratedInterfaces) +
                                  " interfaces with nonzero gamma, got " +
                                  std::to_string(a.gamma.size()));
    }
    return a;
}

void require_same_size(std::size_t curves, std::size_t alloc) {
    if (curves != alloc) {
        throw DimensionMismatch("curve count " + std::to_string(curves) +
                                " != allocation length " + std::to_string(alloc));
    }
}

std::vector<double> active_curve_values(std::span<const ReliabilityCurve> curves,
                                        const ActiveSet& active, double payload_bytes,
                                        double x_ms) {
    std::vector<double> f(active.gamma.size());
    for (std::size_t j = 0; j < active.gamma.size(); ++j) {
        f[j] = curves[active.index[j]].eval(x_ms, active.gamma[j] * payload_bytes);
    }
    return f;
}

}  // namespace

void AllocationVector::validate() const {
    if (gamma.empty()) {
        throw std::invalid_argument("allocation needs at least one interface");
    }
    if (!(gamma_d > 0.0) || !std::isfinite(gamma_d)) {
        throw std::invalid_argument("gamma_d must be positive");
    }
    if (!(decode_min > 0.0) || !std::isfinite(decode_min)) {
        throw std::invalid_argument("decode_min must be positive");
    }
    for (double g : gamma) {
        if (!(g >= 0.0 && g <= gamma_d)) {
            throw std::invalid_argument("gamma values must lie in [0, gamma_d]");
        }
    }
}

std::string strategy_label(const Strategy& strategy, std::size_t n_interfaces) {
    if (std::holds_alternative<Cloning>(strategy)) {
        return "cloning";
    }
    if (const auto* kofn = std::get_if<KofN>(&strategy)) {
        return std::to_string(kofn->k) + "-of-" + std::to_string(n_interfaces);
    }
    return "weighted";
}

Strategy parse_strategy(const std::string& text) {
    if (text == "cloning") {
        return Cloning{};
    }
    if (text.rfind("kofn:", 0) == 0) {
        try {
            std::size_t used = 0;
            int k = std::stoi(text.substr(5), &used);
            if (used == text.size() - 5 && k >= 1) {
                return KofN{k};
            }
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("bad strategy '" + text + "': expected kofn:<positive k>");
    }
    if (text.rfind("weighted:", 0) == 0) {
        AllocationVector alloc;
        std::stringstream ss(text.substr(9));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                double g = std::stod(item, &used);
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
                alloc.gamma.push_back(g);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad strategy '" + text + "': '" + item +
                                            "' is not a number");
            }
        }
        alloc.validate();
        return Weighted{std::move(alloc)};
    }
    throw std::invalid_argument("unknown strategy '" + text +
                                "': expected cloning, kofn:K or weighted:g1,g2,...");
}

AllocationVector strategy_allocation(const Strategy& strategy, std::size_t n_interfaces) {
    if (n_interfaces == 0) {
        throw EmptyInput("strategy needs at least one interface");
    }
    AllocationVector alloc;
    if (std::holds_alternative<Cloning>(strategy)) {
        alloc.gamma.assign(n_interfaces, 1.0);
    } else if (const auto* kofn = std::get_if<KofN>(&strategy)) {
        if (kofn->k < 1 || static_cast<std::size_t>(kofn->k) > n_interfaces) {
            throw InvalidK("k must lie in [1, " + std::to_string(n_interfaces) + "], got " +
                           std::to_string(kofn->k));
        }
        alloc.gamma.assign(n_interfaces, 1.0 / static_cast<double>(kofn->k));
    } else {
        alloc = std::get<Weighted>(strategy).alloc;
        require_same_size(n_interfaces, alloc.size());
    }
    return alloc;
}

bool decode_indicator(Outcome outcome, const AllocationVector& alloc) {
    alloc.validate();
    if (alloc.size() > 32) {
        throw DimensionMismatch("outcome bitmask holds at most 32 interfaces");
    }
    if (alloc.size() < 32 && outcome >= (Outcome{1} << alloc.size())) {
        throw DimensionMismatch("outcome has more bits than the allocation has interfaces");
    }
    double received = 0.0;
    for (std::size_t i = 0; i < alloc.size(); ++i) {
        if (outcome & (Outcome{1} << i)) {
            received += alloc.gamma[i];
        }
    }
    return received >= alloc.decode_min - kDecodeEps;
}

namespace detail {

double sum_decodable_outcomes(std::span<const double> f, std::span<const double> gamma,
                              double decode_min) {
    const std::size_t m = f.size();
    const double threshold = decode_min - kDecodeEps;
    if (m == 0) {
        return threshold <= 0.0 ? 1.0 : 0.0;
    }
    const std::uint64_t n_outcomes = std::uint64_t{1} << m;
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < n_outcomes; ++mask) {
        double product = 1.0;
        double received = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (std::uint64_t{1} << j)) {
                product *= f[j];
                received += gamma[j];
            } else {
                product *= 1.0 - f[j];
            }
        }
        if (received >= threshold) {
            sum += product;
        }
    }
    return sum;
}

}  // namespace detail

double eval_weighted(std::span<const ReliabilityCurve> curves, const AllocationVector& alloc,
                     double payload_bytes, double x_ms) {
    alloc.validate();
    require_same_size(curves.size(), alloc.size());
    ActiveSet active = active_interfaces(alloc);
    std::vector<double> f = active_curve_values(curves, active, payload_bytes, x_ms);
    return detail::sum_decodable_outcomes(f, active.gamma, alloc.decode_min);
}

double total_outcome_probability(std::span<const ReliabilityCurve> curves,
                                 const AllocationVector& alloc, double payload_bytes,
                                 double x_ms) {
    alloc.validate();
    require_same_size(curves.size(), alloc.size());
    ActiveSet active = active_interfaces(alloc);
    std::vector<double> f = active_curve_values(curves, active, payload_bytes, x_ms);
    return detail::sum_decodable_outcomes(f, active.gamma, 0.0);
}

double eval_cloning(std::span<const ReliabilityCurve> curves, double payload_bytes, double x_ms) {
    if (curves.empty()) {
        throw EmptyInput("cloning needs at least one interface");
    }
    double miss_all = 1.0;
    for (const ReliabilityCurve& curve : curves) {
        miss_all *= 1.0 - curve.eval(x_ms, payload_bytes);
    }
    return 1.0 - miss_all;
}

double eval_k_of_n(std::span<const ReliabilityCurve> curves, int k, double payload_bytes,
                   double x_ms) {
    if (curves.empty()) {
        throw EmptyInput("k-of-N needs at least one interface");
    }
    AllocationVector alloc = strategy_allocation(KofN{k}, curves.size());
    return eval_weighted(curves, alloc, payload_bytes, x_ms);
}

double k_of_n_identical(double f, int k, int n) {
    if (k < 1 || k > n) {
        throw InvalidK("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
    }
    if (!(f >= 0.0 && f <= 1.0)) {
        throw DomainError("per-interface reliability must lie in [0,1]");
    }
    double sum = 0.0;
    double binom = 1.0;  // C(n, r), updated incrementally
    for (int r = 0; r <= n; ++r) {
        if (r >= k) {
            sum += binom * std::pow(f, r) * std::pow(1.0 - f, n - r);
        }
        binom = binom * static_cast<double>(n - r) / static_cast<double>(r + 1);
    }
    return sum;
}

std::vector<FragmentAssignment> fragment_plan(const AllocationVector& alloc,
                                              double payload_bytes, double fragment_bytes) {
    alloc.validate();
    if (!(payload_bytes >= 0.0)) {
        throw std::invalid_argument("payload_bytes must be >= 0");
    }
    if (!(fragment_bytes > 0.0)) {
        throw std::invalid_argument("fragment_bytes must be > 0");
    }
    std::vector<FragmentAssignment> plan;
    plan.reserve(alloc.size());
    for (double g : alloc.gamma) {
        FragmentAssignment fa;
        if (g > 0.0 && payload_bytes > 0.0) {
            // Small downward nudge so exact multiples do not round up on
            // floating-point noise.
            double fragments = g * payload_bytes / fragment_bytes;
            fa.fragment_count = static_cast<std::int64_t>(std::ceil(fragments - 1e-9));
            fa.packet_bytes = static_cast<double>(fa.fragment_count) * fragment_bytes;
        }
        plan.push_back(fa);
    }
    return plan;
}

}  // namespace ifacediv
