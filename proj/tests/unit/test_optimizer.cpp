#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "ifacediv/errors.hpp"
#include "ifacediv/normal.hpp"
#include "ifacediv/optimizer.hpp"
#include "ifacediv/presets.hpp"
#include "oracles.hpp"

using namespace ifacediv;

namespace {

ReliabilityCurve constant_curve(double p) {
    return ReliabilityCurve::empirical({{0.0, p}}, p);
}

std::vector<ReliabilityCurve> random_parametric_curves(std::mt19937_64& eng, std::size_t n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<ReliabilityCurve> curves;
    for (std::size_t i = 0; i < n; ++i) {
        InterfaceProfile p{"if" + std::to_string(i), unif(eng), 10.0 + 500.0 * unif(eng),
                           unif(eng), 0.05 + 0.2 * unif(eng)};
        curves.push_back(ReliabilityCurve::parametric(p));
    }
    return curves;
}

InterfaceProfile random_profile(std::mt19937_64& eng, const std::string& name) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return {name, 0.05 + 0.95 * unif(eng), 20.0 + 480.0 * unif(eng), 0.98,
            0.05 + 0.15 * unif(eng)};
}

}  // namespace

TEST_CASE("grid includes both endpoints exactly") {
    GridSpec grid{0.05};
    auto pts = grid.points(1.05);
    REQUIRE(pts.size() == 22);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.05);

    auto coarse = GridSpec{0.4}.points(1.05);
    REQUIRE(coarse.size() == 4);
    CHECK(coarse[1] == doctest::Approx(0.4));
    CHECK(coarse.back() == 1.05);

    auto trivial = GridSpec{1.05}.points(1.05);
    REQUIRE(trivial.size() == 2);
    CHECK(trivial.front() == 0.0);
    CHECK(trivial.back() == 1.05);

    CHECK_THROWS_AS(GridSpec{0.0}.points(1.05), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec{1.2}.points(1.05), std::invalid_argument);
}

TEST_CASE("objective is the weighted reliability sum") {
    std::mt19937_64 eng(61);
    auto curves = random_parametric_curves(eng, 3);
    AllocationVector alloc{{0.5, 0.35, 0.4}, 1.05, 1.0};

    OptimizationTarget single{{400.0}, {1.0}};
    CHECK(objective(curves, alloc, 1500.0, single) ==
          doctest::Approx(eval_weighted(curves, alloc, 1500.0, 400.0)).epsilon(1e-15));

    OptimizationTarget two{{200.0, 500.0}, {1.0, 10.0}};
    double want = eval_weighted(curves, alloc, 1500.0, 200.0) +
                  10.0 * eval_weighted(curves, alloc, 1500.0, 500.0);
    CHECK(objective(curves, alloc, 1500.0, two) == doctest::Approx(want).epsilon(1e-15));

    AllocationVector nothing{{0.0, 0.0, 0.0}, 1.05, 1.0};
    CHECK(objective(curves, nothing, 1500.0, two) == 0.0);
}

TEST_CASE("objective validates targets") {
    std::mt19937_64 eng(67);
    auto curves = random_parametric_curves(eng, 2);
    AllocationVector alloc{{0.5, 0.55}, 1.05, 1.0};
    OptimizationTarget bad{{400.0, 300.0}, {1.0, 1.0}};  // not increasing
    CHECK_THROWS_AS(objective(curves, alloc, 1500.0, bad), std::invalid_argument);
    OptimizationTarget negw{{300.0, 400.0}, {1.0, -1.0}};
    CHECK_THROWS_AS(objective(curves, alloc, 1500.0, negw), std::invalid_argument);
}

TEST_CASE("single-interface search is forced to the decode threshold") {
    std::mt19937_64 eng(71);
    auto curves = random_parametric_curves(eng, 1);
    SplitSolution sol = brute_force_optimize(curves, 1500.0, {{500.0}, {1.0}}, GridSpec{0.05});
    REQUIRE(sol.gamma_star.gamma.size() == 1);
    CHECK(sol.gamma_star.gamma[0] == 1.05);
    CHECK(sol.evaluations == 1);
}

TEST_CASE("far-out target drives full diversity and the plateau objective") {
    std::vector<ReliabilityCurve> curves = {
        ReliabilityCurve::parametric({"a", 0.4, 200.0, 0.9, 0.1}),
        ReliabilityCurve::parametric({"b", 0.4, 200.0, 0.9, 0.1})};
    SplitSolution sol = brute_force_optimize(curves, 1500.0, {{100000.0}, {1.0}}, GridSpec{0.05});
    CHECK(sol.objective_value == doctest::Approx(1.0 - 0.1 * 0.1).epsilon(1e-12));
    // ties resolve toward the least redundant allocation: both at exactly 1.0
    REQUIRE(sol.gamma_star.gamma.size() == 2);
    CHECK(sol.gamma_star.gamma[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sol.gamma_star.gamma[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("optimum dominates every on-grid k-of-N allocation") {
    std::mt19937_64 eng(73);
    for (int rep = 0; rep < 5; ++rep) {
        auto curves = random_parametric_curves(eng, 3);
        OptimizationTarget target{{250.0, 700.0}, {1.0, 5.0}};
        SplitSolution sol = brute_force_optimize(curves, 1500.0, target, GridSpec{0.05});
        for (int k : {1, 2}) {  // 1/k on the 0.05 grid
            AllocationVector kalloc;
            kalloc.gamma.assign(3, 1.0 / k);
            CHECK(sol.objective_value >= objective(curves, kalloc, 1500.0, target) - 1e-12);
        }
    }
}

TEST_CASE("optimum objective is invariant under interface permutation") {
    std::mt19937_64 eng(79);
    auto curves = random_parametric_curves(eng, 3);
    OptimizationTarget target{{300.0, 800.0}, {1.0, 3.0}};
    GridSpec grid{0.15};
    SplitSolution base = brute_force_optimize(curves, 1500.0, target, grid);
    std::vector<ReliabilityCurve> swapped = {curves[2], curves[0], curves[1]};
    SplitSolution perm = brute_force_optimize(swapped, 1500.0, target, grid);
    CHECK(base.objective_value == doctest::Approx(perm.objective_value).epsilon(1e-12));
    CHECK(base.evaluations == perm.evaluations);
}

TEST_CASE("search respects custom decode thresholds") {
    std::mt19937_64 eng(83);
    auto curves = random_parametric_curves(eng, 2);
    SplitSolution sol = brute_force_optimize(curves, 1500.0, {{500.0}, {1.0}}, GridSpec{0.05},
                                             /*gamma_d=*/1.05, /*decode_min=*/1.05);
    CHECK(sol.gamma_star.decode_min == 1.05);
    CHECK(sol.gamma_star.gamma_d == 1.05);
    double sum = sol.gamma_star.gamma[0] + sol.gamma_star.gamma[1];
    CHECK(sum >= 1.05 - 1e-12);
}

TEST_CASE("expected max of equal Gaussians is mu + sigma/sqrt(pi)") {
    double mu = 250.0;
    double sigma = 25.0;
    CHECK(expected_max_latency(mu, sigma, mu, sigma) ==
          doctest::Approx(mu + sigma / std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("expected max of a dominated pair collapses to the larger mean") {
    CHECK(expected_max_latency(100.0, 1.0, 0.0, 1.0) == doctest::Approx(100.0).epsilon(1e-6));
    CHECK(expected_max_latency(5.0, 0.0, 9.0, 0.0) == 9.0);  // degenerate limit
}

TEST_CASE("expected max matches Monte Carlo sampling") {
    std::mt19937_64 eng(89);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 3; ++rep) {
        double mu_a = 100.0 + 400.0 * unif(eng);
        double mu_b = 100.0 + 400.0 * unif(eng);
        double s_a = 10.0 + 40.0 * unif(eng);
        double s_b = 10.0 + 40.0 * unif(eng);
        double mc = oracles::mc_expected_max(mu_a, s_a, mu_b, s_b, 10000000, 1000 + rep);
        double clark = expected_max_latency(mu_a, s_a, mu_b, s_b);
        CHECK(std::abs(clark - mc) / mc < 0.005);
    }
}

TEST_CASE("identical profiles split in half") {
    const InterfaceProfile& umts = builtin_profile("UMTS");
    SplitSolution sol = analytic_two_split(umts, umts, 1500.0, 1.0);
    CHECK(sol.gamma_scalar == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(sol.degenerate);
}

TEST_CASE("vanishing sigma recovers the equal-mean split") {
    InterfaceProfile a = builtin_profile("UMTS");
    InterfaceProfile b = builtin_profile("GPRS");
    a.sigma_ratio = 1e-9;
    b.sigma_ratio = 1e-9;
    SplitSolution sol = analytic_two_split(a, b, 1500.0, 1.0);
    // 0.43*g*1500 + 200 = 0.70*(1-g)*1500 + 400  =>  g = 1250/1695
    CHECK(sol.gamma_scalar == doctest::Approx(1250.0 / 1695.0).epsilon(1e-6));
    double mu_a = mean_latency(a, sol.gamma_scalar * 1500.0);
    double mu_b = mean_latency(b, (1.0 - sol.gamma_scalar) * 1500.0);
    CHECK(mu_a == doctest::Approx(mu_b).epsilon(1e-6));
    CHECK(mu_a == doctest::Approx(337.83).epsilon(1e-3));
}

TEST_CASE("analytic split lands near the per-gamma-sigma scan") {
    SplitSolution sol =
        analytic_two_split(builtin_profile("UMTS"), builtin_profile("GPRS"), 1500.0, 1.0);
    TwoSplitScan scan =
        two_split_grid_scan(builtin_profile("UMTS"), builtin_profile("GPRS"), 1500.0, 1.0);
    CHECK(std::abs(sol.gamma_scalar - scan.gamma) <= 0.02);
    CHECK(std::abs(sol.expected_latency_ms - scan.expected_latency_ms) <=
          0.02 * scan.expected_latency_ms);
}

TEST_CASE("both stationarity branch formulas agree") {
    std::mt19937_64 eng(97);
    for (int rep = 0; rep < 50; ++rep) {
        InterfaceProfile a = random_profile(eng, "a");
        InterfaceProfile b = random_profile(eng, "b");
        double payload = 1500.0;
        double total = 1.0;
        double alpha_sum = a.alpha + b.alpha;
        double mu_a_mid = mean_latency(a, 0.5 * payload);
        double mu_b_mid = mean_latency(b, 0.5 * payload);
        double xi = std::hypot(a.sigma_ratio * mu_a_mid, b.sigma_ratio * mu_b_mid);
        double base = (b.alpha * payload * total + b.beta - a.beta) / (alpha_sum * payload);
        double via_a =
            base - 2.0 * xi * inverse_normal_cdf(a.alpha / alpha_sum) / (alpha_sum * payload);
        double via_b =
            base + 2.0 * xi * inverse_normal_cdf(b.alpha / alpha_sum) / (alpha_sum * payload);
        CHECK(via_a == doctest::Approx(via_b).epsilon(1e-12));
    }
}

TEST_CASE("analytic split satisfies the frozen-sigma stationarity condition") {
    std::mt19937_64 eng(101);
    int tested = 0;
    while (tested < 20) {
        InterfaceProfile a = random_profile(eng, "a");
        InterfaceProfile b = random_profile(eng, "b");
        double payload = 1500.0;
        double total = 1.0;
        SplitSolution sol = analytic_two_split(a, b, payload, total);
        if (sol.gamma_scalar <= 1e-6 || sol.gamma_scalar >= total - 1e-6) {
            continue;  // clamped to the boundary: no interior stationary point
        }
        double sigma_a = a.sigma_ratio * mean_latency(a, 0.5 * payload);
        double sigma_b = b.sigma_ratio * mean_latency(b, 0.5 * payload);
        auto frozen_l = [&](double g) {
            return expected_max_latency(mean_latency(a, g * payload), sigma_a,
                                        mean_latency(b, (total - g) * payload), sigma_b);
        };
        double h = 1e-4;
        double deriv = (frozen_l(sol.gamma_scalar + h) - frozen_l(sol.gamma_scalar - h)) /
                       (2.0 * h);
        CHECK(std::abs(deriv) <= 1e-3 * sol.expected_latency_ms);
        ++tested;
    }
}

TEST_CASE("clamped splits stay inside the feasible interval") {
    // interface b is so slow that everything goes to a
    InterfaceProfile fast{"fast", 0.01, 5.0, 0.99, 0.1};
    InterfaceProfile slow{"slow", 50.0, 5000.0, 0.99, 0.1};
    SplitSolution sol = analytic_two_split(slow, fast, 1500.0, 1.0);
    CHECK(sol.gamma_scalar >= 0.0);
    CHECK(sol.gamma_scalar <= 1.0);
}

TEST_CASE("size-independent profiles return the flagged midpoint") {
    InterfaceProfile a{"a", 0.0, 100.0, 0.99, 0.1};
    InterfaceProfile b{"b", 0.0, 300.0, 0.99, 0.1};
    SplitSolution sol = analytic_two_split(a, b, 1500.0, 1.0);
    CHECK(sol.degenerate);
    CHECK(sol.gamma_scalar == doctest::Approx(0.5));
}

TEST_CASE("inverse normal CDF hits tabulated and property values") {
    CHECK(inverse_normal_cdf(0.5) == 0.0);
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.95996398454).epsilon(1e-6));
    CHECK_THROWS_AS(inverse_normal_cdf(0.0), DomainError);
    CHECK_THROWS_AS(inverse_normal_cdf(1.0), DomainError);
    CHECK_THROWS_AS(inverse_normal_cdf(-0.2), DomainError);

    std::mt19937_64 eng(103);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        double p = std::pow(10.0, -14.0 * unif(eng)) * (unif(eng) < 0.5 ? 1.0 : 0.5);
        p = std::min(std::max(p, 1e-14), 0.5);
        double x = inverse_normal_cdf(p);
        CHECK(std::abs(normal_cdf(x) - p) <= 1e-10);
        CHECK(inverse_normal_cdf(1.0 - p) == doctest::Approx(-x).epsilon(1e-10));
    }
}

TEST_CASE("expected-latency target grid construction") {
    OptimizationTarget t = expected_latency_targets(1000.0, 4);
    CHECK(t.latencies_ms == std::vector<double>{250.0, 500.0, 750.0, 1000.0});
    CHECK(t.weights == std::vector<double>(4, 0.25));
    CHECK_THROWS_AS(expected_latency_targets(1000.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(expected_latency_targets(-1.0, 10), std::invalid_argument);
}

TEST_CASE("expected-latency objective approximates the truncated mean") {
    ReliabilityCurve curve = ReliabilityCurve::parametric(builtin_profile("UMTS"));
    std::vector<ReliabilityCurve> curves = {curve};
    AllocationVector alloc{{1.05}, 1.05, 1.0};
    double horizon = 1000.0;
    auto reliability = [&](double x) { return eval_weighted(curves, alloc, 1500.0, x); };
    double truth = oracles::truncated_expected_latency(reliability, horizon);
    for (int points : {200, 2000}) {
        OptimizationTarget t = expected_latency_targets(horizon, points);
        double estimate = horizon - objective(curves, alloc, 1500.0, t) * horizon;
        CHECK(std::abs(estimate - truth) <= horizon / points);
    }
}

TEST_CASE("expected-latency objective is maximized by the fastest decodable fraction") {
    std::vector<ReliabilityCurve> curves = {
        ReliabilityCurve::parametric(builtin_profile("UMTS"))};
    OptimizationTarget t = expected_latency_targets(2000.0, 1000);
    double best_gamma = -1.0;
    double best = -1.0;
    for (double g = 0.0; g <= 1.0500001; g += 0.001) {
        AllocationVector alloc{{std::min(g, 1.05)}, 1.05, 1.0};
        double obj = objective(curves, alloc, 1500.0, t);
        if (obj > best) {
            best = obj;
            best_gamma = alloc.gamma[0];
        }
    }
    // a single interface decodes alone only from gamma >= 1; smaller packets
    // are faster, so the argmax sits at the decode threshold itself
    CHECK(best_gamma == doctest::Approx(1.0).epsilon(1e-9));
}
