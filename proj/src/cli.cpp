#include "ifacediv/cli.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifacediv/errors.hpp"
#include "ifacediv/latency_model.hpp"
#include "ifacediv/mc_oracle.hpp"
#include "ifacediv/optimizer.hpp"
#include "ifacediv/output.hpp"
#include "ifacediv/presets.hpp"
#include "ifacediv/strategy_eval.hpp"
#include "ifacediv/trace_playback.hpp"

namespace ifacediv::cli {

namespace {

using nlohmann::ordered_json;

struct CommonConfig {
    std::string preset;
    std::string profiles_path;
    double payload_bytes = 1500.0;
    double gamma_d = 1.05;
    double decode_min = 1.0;
    std::string out_dir;
    std::string format = "csv";
};

void add_common_options(CLI::App* cmd, CommonConfig& cfg, bool with_format = false) {
    cmd->add_option("--preset", cfg.preset, "Scenario preset: A, B or C")
        ->check(CLI::IsMember({"A", "B", "C", "a", "b", "c"}));
    cmd->add_option("--profiles", cfg.profiles_path, "JSON file with interface profiles");
    cmd->add_option("--payload-bytes", cfg.payload_bytes, "Message payload size in bytes")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gamma-d", cfg.gamma_d, "Decoding threshold (total coded fraction)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--decode-min", cfg.decode_min,
                    "Received-fraction sum required to decode an outcome")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out_dir, "Directory for output files (default: stdout)");
    if (with_format) {
        cmd->add_option("--format", cfg.format, "Curve output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }
}

/// Interface set from --preset or --profiles; preset also supplies payload
/// and targets.
struct ResolvedScenario {
    std::vector<InterfaceProfile> profiles;
    std::optional<ScenarioPreset> preset;
};

ResolvedScenario resolve_profiles(const CommonConfig& cfg,
                                  const CLI::App* cmd) {
    ResolvedScenario r;
    if (!cfg.preset.empty() && !cfg.profiles_path.empty()) {
        throw std::invalid_argument("--preset and --profiles are mutually exclusive");
    }
    if (!cfg.preset.empty()) {
        r.preset = scenario_preset(cfg.preset[0]);
        r.profiles = r.preset->profiles;
        return r;
    }
    if (!cfg.profiles_path.empty()) {
        r.profiles = load_profiles_json(cfg.profiles_path);
        return r;
    }
    throw std::invalid_argument("command '" + cmd->get_name() +
                                "' needs --preset or --profiles");
}

double resolved_payload(const CommonConfig& cfg, const ResolvedScenario& scenario,
                        const CLI::App* cmd) {
    if (scenario.preset && cmd->count("--payload-bytes") == 0) {
        return scenario.preset->payload_bytes;
    }
    return cfg.payload_bytes;
}

std::vector<ReliabilityCurve> parametric_curves(const std::vector<InterfaceProfile>& profiles) {
    std::vector<ReliabilityCurve> curves;
    curves.reserve(profiles.size());
    for (const InterfaceProfile& p : profiles) {
        curves.push_back(ReliabilityCurve::parametric(p));
    }
    return curves;
}

ordered_json profile_to_json(const InterfaceProfile& p) {
    ordered_json j;
    j["name"] = p.name;
    j["alpha"] = round_sig12(p.alpha);
    j["beta"] = round_sig12(p.beta);
    j["p_succ"] = round_sig12(p.p_succ);
    j["sigma_ratio"] = round_sig12(p.sigma_ratio);
    return j;
}

ordered_json doubles_to_json(const std::vector<double>& values) {
    ordered_json arr = ordered_json::array();
    for (double v : values) {
        arr.push_back(round_sig12(v));
    }
    return arr;
}

ordered_json targets_to_json(const OptimizationTarget& t) {
    ordered_json j;
    j["latencies_ms"] = doubles_to_json(t.latencies_ms);
    j["weights"] = doubles_to_json(t.weights);
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
}

/// Writes the document into <out>/<name> when --out was given, otherwise to
/// stdout.
void emit_json(const ordered_json& doc, const CommonConfig& cfg, const std::string& name) {
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (cfg.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(std::filesystem::path(cfg.out_dir) / name, text);
}

void emit_text(const std::string& text, const CommonConfig& cfg, const std::string& name) {
    if (cfg.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(std::filesystem::path(cfg.out_dir) / name, text);
}

std::string sanitize_label(const std::string& label) {
    std::string s = label;
    for (char& c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) {
            c = '_';
        }
    }
    return s;
}

OptimizationTarget parse_targets(const std::string& text) {
    OptimizationTarget t;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        std::size_t colon = pair.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("bad --targets entry '" + pair +
                                        "': expected latency_ms:weight");
        }
        try {
            t.latencies_ms.push_back(std::stod(pair.substr(0, colon)));
            t.weights.push_back(std::stod(pair.substr(colon + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad --targets entry '" + pair + "'");
        }
    }
    t.validate();
    return t;
}

double strategy_eval_dispatch(const Strategy& strategy,
                              const std::vector<ReliabilityCurve>& curves,
                              double payload_bytes, double decode_min, double x_ms) {
    if (std::holds_alternative<Cloning>(strategy)) {
        return eval_cloning(curves, payload_bytes, x_ms);
    }
    if (const auto* kofn = std::get_if<KofN>(&strategy)) {
        return eval_k_of_n(curves, kofn->k, payload_bytes, x_ms);
    }
    AllocationVector alloc = std::get<Weighted>(strategy).alloc;
    alloc.decode_min = decode_min;
    return eval_weighted(curves, alloc, payload_bytes, x_ms);
}

/// Mean decode latency conditioned on delivery within the horizon,
/// 1/F(h) * integral_0^h (F(h) - F(x)) dx by trapezoid rule.
double conditional_expected_latency(const std::vector<ReliabilityCurve>& curves,
                                    const AllocationVector& alloc, double payload_bytes,
                                    double horizon_ms) {
    constexpr int kSteps = 4000;
    double f_h = eval_weighted(curves, alloc, payload_bytes, horizon_ms);
    if (f_h <= 0.0) {
        return horizon_ms;
    }
    double integral = 0.0;
    double prev = 0.0;
    for (int i = 1; i <= kSteps; ++i) {
        double x = horizon_ms * static_cast<double>(i) / kSteps;
        double f = eval_weighted(curves, alloc, payload_bytes, x);
        integral += 0.5 * (prev + f) * (horizon_ms / kSteps);
        prev = f;
    }
    return horizon_ms - integral / f_h;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateConfig {
    CommonConfig common;
    std::string strategy_text = "cloning";
    double x_min = 0.0;
    double x_max = 1000.0;
    double x_step = 10.0;
};

int cmd_evaluate(const EvaluateConfig& cfg, const CLI::App* cmd) {
    ResolvedScenario scenario = resolve_profiles(cfg.common, cmd);
    double payload = resolved_payload(cfg.common, scenario, cmd);
    Strategy strategy = parse_strategy(cfg.strategy_text);
    std::vector<ReliabilityCurve> curves = parametric_curves(scenario.profiles);
    // Resolves dimension/k errors before any output is produced.
    strategy_allocation(strategy, curves.size());

    if (!(cfg.x_step > 0.0) || cfg.x_max < cfg.x_min) {
        throw std::invalid_argument("need x_step > 0 and x_max >= x_min");
    }
    std::vector<double> xs;
    std::vector<double> values;
    const auto steps =
        static_cast<std::int64_t>(std::floor((cfg.x_max - cfg.x_min) / cfg.x_step + 1e-9));
    for (std::int64_t i = 0; i <= steps; ++i) {
        double x = std::min(cfg.x_max, cfg.x_min + static_cast<double>(i) * cfg.x_step);
        xs.push_back(x);
        values.push_back(strategy_eval_dispatch(strategy, curves, payload,
                                                cfg.common.decode_min, x));
    }

    if (cfg.common.format == "json") {
        ordered_json doc;
        doc["command"] = "evaluate";
        doc["strategy"] = strategy_label(strategy, curves.size());
        doc["payload_bytes"] = round_sig12(payload);
        doc["x_ms"] = doubles_to_json(xs);
        doc["reliability"] = doubles_to_json(values);
        emit_json(doc, cfg.common, "evaluate.json");
    } else {
        std::ostringstream out;
        out << "x_ms,reliability\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << format_sig12(xs[i]) << ',' << format_sig12(values[i]) << '\n';
        }
        emit_text(out.str(), cfg.common, "curve.csv");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

struct OptimizeConfig {
    CommonConfig common;
    double delta_gamma = 0.05;
    bool include_starred = false;
    std::string targets_text;
    std::string expected_latency_text;  // "horizon_ms:points"
};

int cmd_optimize(const OptimizeConfig& cfg, const CLI::App* cmd) {
    ResolvedScenario scenario = resolve_profiles(cfg.common, cmd);
    double payload = resolved_payload(cfg.common, scenario, cmd);
    std::vector<ReliabilityCurve> curves = parametric_curves(scenario.profiles);

    OptimizationTarget targets;
    bool expected_latency_mode = false;
    if (!cfg.targets_text.empty()) {
        targets = parse_targets(cfg.targets_text);
    } else if (!cfg.expected_latency_text.empty()) {
        std::size_t colon = cfg.expected_latency_text.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("--expected-latency expects horizon_ms:points");
        }
        targets = expected_latency_targets(std::stod(cfg.expected_latency_text.substr(0, colon)),
                                           std::stoi(cfg.expected_latency_text.substr(colon + 1)));
        expected_latency_mode = true;
    } else if (scenario.preset) {
        targets = scenario.preset->targets_with(cfg.include_starred);
        expected_latency_mode = scenario.preset->id == 'A';
    } else {
        throw std::invalid_argument("custom profiles need --targets or --expected-latency");
    }

    GridSpec grid{cfg.delta_gamma};
    auto t0 = std::chrono::steady_clock::now();
    SplitSolution sol = brute_force_optimize(curves, payload, targets, grid,
                                             cfg.common.gamma_d, cfg.common.decode_min);
    auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - t0);
    // Timing stays on stderr so output files are reproducible byte for byte.
    std::cerr << "optimize: " << sol.evaluations << " feasible allocations in "
              << format_sig12(elapsed.count()) << " ms\n";

    ordered_json doc;
    doc["command"] = "optimize";
    doc["scenario"] = scenario.preset ? std::string(1, scenario.preset->id) : "custom";
    ordered_json names = ordered_json::array();
    for (const InterfaceProfile& p : scenario.profiles) {
        names.push_back(p.name);
    }
    doc["interfaces"] = names;
    doc["payload_bytes"] = round_sig12(payload);
    doc["gamma_d"] = round_sig12(cfg.common.gamma_d);
    doc["decode_min"] = round_sig12(cfg.common.decode_min);
    doc["delta_gamma"] = round_sig12(cfg.delta_gamma);
    doc["include_starred"] = cfg.include_starred;
    doc["targets"] = targets_to_json(targets);
    doc["gamma_star"] = doubles_to_json(sol.gamma_star.gamma);
    doc["objective"] = round_sig12(sol.objective_value);
    doc["evaluations"] = sol.evaluations;

    ordered_json per_target = ordered_json::array();
    for (double l : targets.latencies_ms) {
        per_target.push_back(round_sig12(eval_weighted(curves, sol.gamma_star, payload, l)));
    }
    doc["per_target_reliability"] = per_target;

    if (expected_latency_mode) {
        double horizon = targets.latencies_ms.back();
        doc["expected_latency_ms"] = round_sig12(
            conditional_expected_latency(curves, sol.gamma_star, payload, horizon));
    } else {
        doc["expected_latency_ms"] = nullptr;
    }

    ordered_json comparison = ordered_json::array();
    auto add_comparison = [&](const std::string& label, const Strategy& strategy) {
        ordered_json entry;
        entry["strategy"] = label;
        double obj = 0.0;
        ordered_json rel = ordered_json::array();
        for (std::size_t r = 0; r < targets.size(); ++r) {
            double f = strategy_eval_dispatch(strategy, curves, payload, 1.0,
                                              targets.latencies_ms[r]);
            obj += f * targets.weights[r];
            rel.push_back(round_sig12(f));
        }
        entry["objective"] = round_sig12(obj);
        entry["per_target_reliability"] = rel;
        comparison.push_back(entry);
    };
    add_comparison("cloning", Cloning{});
    for (int k = 1; k <= static_cast<int>(curves.size()); ++k) {
        add_comparison(strategy_label(KofN{k}, curves.size()), KofN{k});
    }
    doc["comparison"] = comparison;

    emit_json(doc, cfg.common, "optimize.json");
    return 0;
}

// ---------------------------------------------------------------------------
// split2
// ---------------------------------------------------------------------------

struct Split2Config {
    CommonConfig common;
    std::string profile_a;
    std::string profile_b;
    double total = 1.0;
    double scan_step = 0.001;
};

int cmd_split2(const Split2Config& cfg) {
    auto resolve = [&](const std::string& name) -> InterfaceProfile {
        if (!cfg.common.profiles_path.empty()) {
            for (const InterfaceProfile& p : load_profiles_json(cfg.common.profiles_path)) {
                if (p.name == name) {
                    return p;
                }
            }
        }
        return builtin_profile(name);
    };
    InterfaceProfile a = resolve(cfg.profile_a);
    InterfaceProfile b = resolve(cfg.profile_b);

    SplitSolution sol = analytic_two_split(a, b, cfg.common.payload_bytes, cfg.total);
    TwoSplitScan scan =
        two_split_grid_scan(a, b, cfg.common.payload_bytes, cfg.total, cfg.scan_step);

    ordered_json doc;
    doc["command"] = "split2";
    doc["profile_a"] = profile_to_json(a);
    doc["profile_b"] = profile_to_json(b);
    doc["payload_bytes"] = round_sig12(cfg.common.payload_bytes);
    doc["total"] = round_sig12(cfg.total);
    doc["gamma"] = round_sig12(sol.gamma_scalar);
    doc["gamma_b"] = round_sig12(cfg.total - sol.gamma_scalar);
    doc["expected_latency_ms"] = round_sig12(sol.expected_latency_ms);
    doc["grid_scan_gamma"] = round_sig12(scan.gamma);
    doc["grid_scan_expected_latency_ms"] = round_sig12(scan.expected_latency_ms);
    doc["delta"] = round_sig12(std::abs(sol.gamma_scalar - scan.gamma));
    doc["degenerate"] = sol.degenerate;
    emit_json(doc, cfg.common, "split2.json");
    return 0;
}

// ---------------------------------------------------------------------------
// playback
// ---------------------------------------------------------------------------

struct PlaybackConfig {
    CommonConfig common;
    std::vector<std::string> trace_paths;
    std::vector<std::string> strategy_texts;
};

int cmd_playback(const PlaybackConfig& cfg) {
    if (cfg.trace_paths.empty()) {
        throw std::invalid_argument("playback needs at least one --trace");
    }
    std::vector<Trace> traces;
    traces.reserve(cfg.trace_paths.size());
    for (const std::string& path : cfg.trace_paths) {
        traces.push_back(load_trace(path));
    }
    std::vector<Strategy> strategies;
    if (cfg.strategy_texts.empty()) {
        strategies.push_back(Cloning{});
    } else {
        for (const std::string& text : cfg.strategy_texts) {
            strategies.push_back(parse_strategy(text));
        }
    }

    PlaybackReport report = predict_from_marginals(traces, strategies);

    ordered_json doc;
    doc["command"] = "playback";
    ordered_json names = ordered_json::array();
    for (const Trace& t : traces) {
        names.push_back(t.interface_name);
    }
    doc["traces"] = names;
    doc["rows_used"] = report.rows_used;
    doc["dropped_probes"] = report.dropped_probes;
    ordered_json per_strategy;
    for (const StrategyPlayback& entry : report.strategies) {
        ordered_json j;
        j["ks"] = round_sig12(entry.ks);
        j["measured"] = curve_to_json(entry.measured);
        j["predicted"] = curve_to_json(entry.predicted);
        per_strategy[entry.label] = std::move(j);
    }
    doc["strategies"] = per_strategy;
    emit_json(doc, cfg.common, "playback.json");

    if (!cfg.common.out_dir.empty()) {
        for (const StrategyPlayback& entry : report.strategies) {
            std::string base = sanitize_label(entry.label);
            for (const auto& [suffix, curve] :
                 {std::pair<const char*, const ReliabilityCurve*>{"measured", &entry.measured},
                  {"predicted", &entry.predicted}}) {
                std::ostringstream out;
                write_curve_csv(out, *curve);
                emit_text(out.str(), cfg.common, "playback_" + base + "_" + suffix + ".csv");
            }
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// mc-check
// ---------------------------------------------------------------------------

struct McCheckConfig {
    CommonConfig common;
    std::string strategy_text = "cloning";
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    double delta_gamma = 0.05;
    double inject_bias = 0.0;
    int probes = 20;
};

int cmd_mc_check(const McCheckConfig& cfg, const CLI::App* cmd) {
    ResolvedScenario scenario = resolve_profiles(cfg.common, cmd);
    double payload = resolved_payload(cfg.common, scenario, cmd);
    std::vector<ReliabilityCurve> curves = parametric_curves(scenario.profiles);

    Strategy strategy;
    if (cfg.strategy_text == "optimized") {
        if (!scenario.preset) {
            throw std::invalid_argument("--strategy optimized needs --preset targets");
        }
        SplitSolution sol = brute_force_optimize(
            curves, payload, scenario.preset->targets_with(false), GridSpec{cfg.delta_gamma},
            cfg.common.gamma_d, cfg.common.decode_min);
        strategy = Weighted{sol.gamma_star};
    } else {
        strategy = parse_strategy(cfg.strategy_text);
    }
    AllocationVector alloc = strategy_allocation(strategy, curves.size());
    alloc.decode_min = cfg.common.decode_min;

    SimConfig sim;
    sim.n_trials = cfg.trials;
    sim.seed = cfg.seed;
    sim.profiles = scenario.profiles;
    sim.strategy = std::holds_alternative<Weighted>(strategy)
                       ? Strategy{Weighted{alloc}}
                       : strategy;
    sim.payload_bytes = payload;
    ReliabilityCurve simulated = simulate_strategy(sim);

    // Probe grid spanning the slowest interface's latency body.
    double x_hi = 0.0;
    for (std::size_t i = 0; i < scenario.profiles.size(); ++i) {
        if (alloc.gamma[i] > 0.0) {
            double mu = mean_latency(scenario.profiles[i], alloc.gamma[i] * payload);
            x_hi = std::max(x_hi, mu * (1.0 + 6.0 * scenario.profiles[i].sigma_ratio));
        }
    }
    if (x_hi == 0.0) {
        x_hi = 1.0;
    }

    const double n = static_cast<double>(cfg.trials);
    double max_abs_deviation = 0.0;
    bool pass = true;
    ordered_json probes = ordered_json::array();
    for (int j = 1; j <= cfg.probes; ++j) {
        double x = x_hi * static_cast<double>(j) / cfg.probes;
        double analytic = strategy_eval_dispatch(strategy, curves, payload,
                                                 cfg.common.decode_min, x) +
                          cfg.inject_bias;
        double simulated_f = simulated.eval(x, payload);
        double deviation = std::abs(simulated_f - analytic);
        // Three binomial standard deviations plus a 1/n guard for the
        // degenerate tails where the variance estimate collapses.
        double bound = 3.0 * std::sqrt(std::max(analytic * (1.0 - analytic), 0.0) / n) + 1.0 / n;
        bool probe_pass = deviation <= bound;
        pass = pass && probe_pass;
        max_abs_deviation = std::max(max_abs_deviation, deviation);

        ordered_json p;
        p["x_ms"] = round_sig12(x);
        p["analytic"] = round_sig12(analytic);
        p["simulated"] = round_sig12(simulated_f);
        p["bound"] = round_sig12(bound);
        p["pass"] = probe_pass;
        probes.push_back(std::move(p));
    }

    ordered_json doc;
    doc["command"] = "mc_check";
    doc["scenario"] = scenario.preset ? std::string(1, scenario.preset->id) : "custom";
    doc["strategy"] = strategy_label(strategy, curves.size());
    doc["gamma"] = doubles_to_json(alloc.gamma);
    doc["decode_min"] = round_sig12(cfg.common.decode_min);
    doc["trials"] = cfg.trials;
    doc["seed"] = cfg.seed;
    doc["probes"] = probes;
    doc["max_abs_deviation"] = round_sig12(max_abs_deviation);
    doc["pass"] = pass;
    emit_json(doc, cfg.common, "mc_check.json");
    return pass ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Latency-reliability analysis of multi-interface transmission strategies"};
    app.require_subcommand(1);

    EvaluateConfig eval_cfg;
    CLI::App* eval_cmd = app.add_subcommand(
        "evaluate", "Latency-reliability curve of a strategy over an x grid");
    add_common_options(eval_cmd, eval_cfg.common, /*with_format=*/true);
    eval_cmd->add_option("--strategy", eval_cfg.strategy_text,
                         "cloning | kofn:K | weighted:g1,g2,...");
    eval_cmd->add_option("--x-min", eval_cfg.x_min, "Grid start in ms");
    eval_cmd->add_option("--x-max", eval_cfg.x_max, "Grid end in ms");
    eval_cmd->add_option("--x-step", eval_cfg.x_step, "Grid step in ms")
        ->check(CLI::PositiveNumber);

    OptimizeConfig opt_cfg;
    CLI::App* opt_cmd = app.add_subcommand(
        "optimize", "Exhaustive search for the best payload allocation");
    add_common_options(opt_cmd, opt_cfg.common);
    opt_cmd->add_option("--delta-gamma", opt_cfg.delta_gamma, "Allocation grid step")
        ->check(CLI::PositiveNumber);
    opt_cmd->add_flag("--include-starred", opt_cfg.include_starred,
                      "Include the starred preset targets (scenario B)");
    opt_cmd->add_option("--targets", opt_cfg.targets_text,
                        "Comma-separated latency_ms:weight pairs");
    opt_cmd->add_option("--expected-latency", opt_cfg.expected_latency_text,
                        "horizon_ms:points - optimize the truncated expected latency");

    Split2Config split_cfg;
    CLI::App* split_cmd = app.add_subcommand(
        "split2", "Closed-form two-interface split minimizing expected latency");
    add_common_options(split_cmd, split_cfg.common);
    split_cmd->add_option("--profile-a", split_cfg.profile_a, "First interface (name)")
        ->required();
    split_cmd->add_option("--profile-b", split_cfg.profile_b, "Second interface (name)")
        ->required();
    split_cmd->add_option("--total", split_cfg.total, "Total payload fraction to split")
        ->check(CLI::PositiveNumber);
    split_cmd->add_option("--scan-step", split_cfg.scan_step, "Reference grid-scan step")
        ->check(CLI::PositiveNumber);

    PlaybackConfig play_cfg;
    CLI::App* play_cmd = app.add_subcommand(
        "playback", "Replay latency traces and compare against marginal predictions");
    add_common_options(play_cmd, play_cfg.common);
    play_cmd->add_option("--trace", play_cfg.trace_paths, "Trace CSV file (repeatable)");
    play_cmd->add_option("--strategy", play_cfg.strategy_texts,
                         "Strategy to replay (repeatable)");

    McCheckConfig mc_cfg;
    CLI::App* mc_cmd = app.add_subcommand(
        "mc-check", "Monte Carlo agreement check of the analytic evaluation");
    add_common_options(mc_cmd, mc_cfg.common);
    mc_cmd->add_option("--strategy", mc_cfg.strategy_text,
                       "cloning | kofn:K | weighted:... | optimized");
    mc_cmd->add_option("--trials", mc_cfg.trials, "Number of simulated transmissions")
        ->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc_cfg.seed, "Simulation seed");
    mc_cmd->add_option("--delta-gamma", mc_cfg.delta_gamma,
                       "Grid step for --strategy optimized")
        ->check(CLI::PositiveNumber);
    mc_cmd->add_option("--inject-bias", mc_cfg.inject_bias,
                       "Offset added to analytic values (detector self-test)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (eval_cmd->parsed()) {
            return cmd_evaluate(eval_cfg, eval_cmd);
        }
        if (opt_cmd->parsed()) {
            return cmd_optimize(opt_cfg, opt_cmd);
        }
        if (split_cmd->parsed()) {
            return cmd_split2(split_cfg);
        }
        if (play_cmd->parsed()) {
            return cmd_playback(play_cfg);
        }
        if (mc_cmd->parsed()) {
            return cmd_mc_check(mc_cfg, mc_cmd);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ifacediv::cli
