#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include <doctest.h>

#include "ifacediv/errors.hpp"
#include "ifacediv/normal.hpp"
#include "ifacediv/trace_playback.hpp"

using namespace ifacediv;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ifacediv_trace_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& body) {
    fs::path p = dir / name;
    std::ofstream out(p);
    out << body;
    return p;
}

Trace make_trace(const std::string& name, const std::vector<LatencySample>& samples,
                 std::int64_t first_index = 0) {
    Trace t;
    t.interface_name = name;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        t.records.emplace_back(first_index + static_cast<std::int64_t>(i), samples[i]);
    }
    return t;
}

/// Independent synthetic trace: Gaussian latency, Bernoulli delivery.
Trace synth_trace(const std::string& name, std::size_t probes, double mu, double sigma,
                  double p_succ, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> lat(mu, sigma);
    std::vector<LatencySample> samples;
    samples.reserve(probes);
    for (std::size_t i = 0; i < probes; ++i) {
        if (unif(eng) < p_succ) {
            samples.push_back(LatencySample::delivered(std::max(0.0, lat(eng))));
        } else {
            samples.push_back(LatencySample::lost());
        }
    }
    return make_trace(name, samples);
}

}  // namespace

TEST_CASE("trace files parse records, losses and headers") {
    TempDir tmp;
    fs::path p = write_file(tmp.path, "t.csv", "0,12.5\n1,\n2,8.1\n");
    Trace t = load_trace(p);
    CHECK(t.interface_name == "t");
    REQUIRE(t.records.size() == 3);
    CHECK(t.records[0].second.latency_ms() == doctest::Approx(12.5));
    CHECK(t.records[1].second.is_lost());
    CHECK(t.records[2].second.latency_ms() == doctest::Approx(8.1));

    fs::path with_header =
        write_file(tmp.path, "h.csv", "probe_index,latency_ms\n0,1.0\n1,2.0\n");
    CHECK(load_trace(with_header).records.size() == 2);
}

TEST_CASE("malformed traces are rejected with line numbers") {
    TempDir tmp;
    CHECK_THROWS_AS(load_trace(tmp.path / "absent.csv"), IoError);
    CHECK_THROWS_AS(load_trace(write_file(tmp.path, "empty.csv", "")), ParseError);
    CHECK_THROWS_AS(load_trace(write_file(tmp.path, "mono.csv", "0,1.0\n2,1.0\n1,1.0\n")),
                    ParseError);
    CHECK_THROWS_AS(load_trace(write_file(tmp.path, "dupe.csv", "0,1.0\n0,2.0\n")), ParseError);
    CHECK_THROWS_AS(load_trace(write_file(tmp.path, "field.csv", "0\n")), ParseError);
    CHECK_THROWS_AS(load_trace(write_file(tmp.path, "neg.csv", "0,-4\n")), ParseError);
    try {
        load_trace(write_file(tmp.path, "bad.csv", "0,1.0\n1,oops\n"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("alignment inner-joins probe indices") {
    std::vector<LatencySample> a = {LatencySample::delivered(1.0), LatencySample::delivered(2.0),
                                    LatencySample::delivered(3.0)};
    std::vector<LatencySample> b = {LatencySample::delivered(4.0), LatencySample::delivered(5.0),
                                    LatencySample::delivered(6.0)};
    std::vector<Trace> shifted = {make_trace("a", a, 0), make_trace("b", b, 1)};
    AlignedRows rows = align(shifted);
    REQUIRE(rows.rows.size() == 2);  // indices 1 and 2
    CHECK(rows.dropped_probes == 2);  // index 0 and index 3
    CHECK(rows.rows[0][0].latency_ms() == doctest::Approx(2.0));
    CHECK(rows.rows[0][1].latency_ms() == doctest::Approx(4.0));

    std::vector<Trace> same = {make_trace("a", a, 0), make_trace("b", b, 0)};
    CHECK(align(same).rows.size() == 3);
    CHECK(align(same).dropped_probes == 0);

    std::vector<Trace> disjoint = {make_trace("a", a, 0), make_trace("b", b, 100)};
    CHECK_THROWS_AS(align(disjoint), NoOverlap);
}

TEST_CASE("row playback follows the strategy order statistics") {
    std::vector<LatencySample> row = {LatencySample::delivered(10.0),
                                      LatencySample::delivered(20.0), LatencySample::lost()};
    CHECK(playback_row(row, KofN{1}).latency_ms() == 10.0);
    CHECK(playback_row(row, KofN{2}).latency_ms() == 20.0);
    CHECK(playback_row(row, KofN{3}).is_lost());
    CHECK(playback_row(row, Cloning{}).latency_ms() == 10.0);
    CHECK_THROWS_AS(playback_row(row, KofN{4}), InvalidK);

    AllocationVector alloc{{0.6, 0.6, 0.6}, 1.05, 1.0};
    CHECK(playback_row(row, Weighted{alloc}).latency_ms() == 20.0);
    AllocationVector wrong{{0.6, 0.6}, 1.05, 1.0};
    CHECK_THROWS_AS(playback_row(row, Weighted{wrong}), DimensionMismatch);
}

TEST_CASE("k-th order statistics are monotone in k and cloning equals 1-of-N") {
    std::mt19937_64 eng(113);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 1 + eng() % 5;
        std::vector<LatencySample> row;
        for (std::size_t i = 0; i < n; ++i) {
            row.push_back(unif(eng) < 0.3 ? LatencySample::lost()
                                          : LatencySample::delivered(100.0 * unif(eng)));
        }
        auto as_value = [](const LatencySample& s) {
            return s.is_lost() ? std::numeric_limits<double>::infinity() : s.latency_ms();
        };
        double prev = as_value(playback_row(row, Cloning{}));
        CHECK(prev == as_value(playback_row(row, KofN{1})));
        for (int k = 1; k <= static_cast<int>(n); ++k) {
            double cur = as_value(playback_row(row, KofN{k}));
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("playback curves are invariant under row shuffling") {
    Trace a = synth_trace("a", 500, 50.0, 5.0, 0.9, 1);
    Trace b = synth_trace("b", 500, 80.0, 8.0, 0.8, 2);
    std::vector<Trace> traces = {a, b};
    AlignedRows rows = align(traces);
    std::vector<Strategy> strategies = {Cloning{}, KofN{2}};
    auto curves = playback(rows, strategies);

    std::mt19937_64 eng(115);
    std::shuffle(rows.rows.begin(), rows.rows.end(), eng);
    auto shuffled = playback(rows, strategies);
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        REQUIRE(curves[s].points().size() == shuffled[s].points().size());
        CHECK(curves[s].plateau() == shuffled[s].plateau());
        for (std::size_t i = 0; i < curves[s].points().size(); ++i) {
            CHECK(curves[s].points()[i].x_ms == shuffled[s].points()[i].x_ms);
            CHECK(curves[s].points()[i].probability == shuffled[s].points()[i].probability);
        }
    }
}

TEST_CASE("ks distance of step curves") {
    ReliabilityCurve a = empirical_from_samples(
        {LatencySample::delivered(1.0), LatencySample::delivered(2.0)});
    CHECK(ks_distance(a, a) == 0.0);

    ReliabilityCurve full = ReliabilityCurve::empirical({{1.0, 1.0}}, 1.0);
    ReliabilityCurve never = ReliabilityCurve::empirical({}, 0.0);
    CHECK(ks_distance(full, never) == doctest::Approx(1.0));

    ReliabilityCurve step1 = ReliabilityCurve::empirical({{1.0, 1.0}}, 1.0);
    ReliabilityCurve step2 = ReliabilityCurve::empirical({{2.0, 1.0}}, 1.0);
    CHECK(ks_distance(step1, step2) == doctest::Approx(1.0));  // gap on [1,2)
}

TEST_CASE("single-trace identity composition has zero divergence") {
    Trace t = synth_trace("solo", 2000, 60.0, 6.0, 0.85, 3);
    std::vector<Trace> traces = {t};
    std::vector<Strategy> strategies = {KofN{1}, Cloning{}};
    PlaybackReport report = predict_from_marginals(traces, strategies);
    REQUIRE(report.strategies.size() == 2);
    CHECK(report.strategies[0].ks == 0.0);
    CHECK(report.strategies[1].ks == 0.0);
    CHECK(report.rows_used == 2000);
}

TEST_CASE("independent synthetic traces make predictions match playback") {
    std::vector<Trace> traces = {synth_trace("a", 20000, 50.0, 5.0, 0.95, 11),
                                 synth_trace("b", 20000, 70.0, 7.0, 0.90, 12),
                                 synth_trace("c", 20000, 90.0, 9.0, 0.85, 13)};
    std::vector<Strategy> strategies = {KofN{1}, KofN{2}, KofN{3}, Cloning{}};
    PlaybackReport report = predict_from_marginals(traces, strategies);
    for (const StrategyPlayback& entry : report.strategies) {
        CHECK(entry.ks <= 0.02);
    }
}

TEST_CASE("correlated traces are detected, not fatal") {
    Trace a = synth_trace("a", 5000, 50.0, 5.0, 0.9, 21);
    Trace copy = a;
    copy.interface_name = "b";
    std::vector<Trace> traces = {a, copy};
    std::vector<Strategy> strategies = {Cloning{}};
    PlaybackReport report = predict_from_marginals(traces, strategies);
    // the independence assumption overestimates a perfectly correlated pair
    CHECK(report.strategies[0].ks > 0.01);
    double measured_plateau = report.strategies[0].measured.plateau();
    double predicted_plateau = report.strategies[0].predicted.plateau();
    CHECK(predicted_plateau > measured_plateau);
}

TEST_CASE("degenerate marginals reduce prediction to the surviving interface") {
    std::vector<LatencySample> dead(300, LatencySample::lost());
    Trace a = synth_trace("a", 300, 40.0, 4.0, 0.9, 31);
    Trace b = make_trace("b", dead);
    std::vector<Trace> traces = {a, b};
    std::vector<Strategy> strategies = {KofN{1}};
    PlaybackReport report = predict_from_marginals(traces, strategies);
    CHECK(report.strategies[0].ks == 0.0);
}
