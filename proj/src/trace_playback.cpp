#include "ifacediv/trace_playback.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "ifacediv/errors.hpp"
#include "ifacediv/mc_oracle.hpp"

namespace ifacediv {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, std::int64_t& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

Trace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open trace file: " + path.string());
    }
    Trace trace;
    trace.interface_name = path.stem().string();

    std::string line;
    std::uint64_t line_no = 0;
    std::int64_t prev_index = std::numeric_limits<std::int64_t>::min();
    bool saw_record = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = strip(line);
        if (text.empty()) {
            continue;
        }
        std::size_t comma = text.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path.string() + ": expected 'probe_index,latency_ms'", line_no);
        }
        std::string index_field = strip(text.substr(0, comma));
        std::string latency_field = strip(text.substr(comma + 1));

        std::int64_t index = 0;
        if (!parse_int(index_field, index)) {
            // A non-numeric first field on the first line is a header.
            if (line_no == 1 && !saw_record) {
                continue;
            }
            throw ParseError(path.string() + ": bad probe index '" + index_field + "'", line_no);
        }
        if (index <= prev_index) {
            throw ParseError(path.string() + ": probe indices must be strictly increasing",
                             line_no);
        }
        LatencySample sample = LatencySample::lost();
        if (!latency_field.empty()) {
            double latency = 0.0;
            if (!parse_double(latency_field, latency) || latency < 0.0) {
                throw ParseError(path.string() + ": bad latency '" + latency_field + "'",
                                 line_no);
            }
            sample = LatencySample::delivered(latency);
        }
        trace.records.emplace_back(index, sample);
        prev_index = index;
        saw_record = true;
    }
    if (trace.records.empty()) {
        throw ParseError(path.string() + ": no records", line_no);
    }
    return trace;
}

AlignedRows align(std::span<const Trace> traces) {
    if (traces.empty()) {
        throw EmptyInput("align needs at least one trace");
    }
    AlignedRows out;
    std::set<std::int64_t> common;
    std::set<std::int64_t> seen;
    for (std::size_t t = 0; t < traces.size(); ++t) {
        out.interface_names.push_back(traces[t].interface_name);
        std::set<std::int64_t> indices;
        for (const auto& [idx, sample] : traces[t].records) {
            indices.insert(idx);
            seen.insert(idx);
        }
        if (t == 0) {
            common = std::move(indices);
        } else {
            std::set<std::int64_t> kept;
            std::set_intersection(common.begin(), common.end(), indices.begin(), indices.end(),
                                  std::inserter(kept, kept.begin()));
            common = std::move(kept);
        }
    }
    if (common.empty()) {
        throw NoOverlap("traces share no probe indices");
    }
    out.dropped_probes = seen.size() - common.size();

    std::vector<std::map<std::int64_t, LatencySample>> lookup(traces.size());
    for (std::size_t t = 0; t < traces.size(); ++t) {
        for (const auto& [idx, sample] : traces[t].records) {
            lookup[t].emplace(idx, sample);
        }
    }
    out.rows.reserve(common.size());
    for (std::int64_t idx : common) {
        std::vector<LatencySample> row;
        row.reserve(traces.size());
        for (std::size_t t = 0; t < traces.size(); ++t) {
            row.push_back(lookup[t].at(idx));
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

LatencySample playback_row(std::span<const LatencySample> row, const Strategy& strategy) {
    if (std::holds_alternative<Cloning>(strategy)) {
        double best = std::numeric_limits<double>::infinity();
        for (const LatencySample& s : row) {
            if (!s.is_lost()) {
                best = std::min(best, s.latency_ms());
            }
        }
        return std::isinf(best) ? LatencySample::lost() : LatencySample::delivered(best);
    }
    if (const auto* kofn = std::get_if<KofN>(&strategy)) {
        if (kofn->k < 1 || static_cast<std::size_t>(kofn->k) > row.size()) {
            throw InvalidK("k must lie in [1, " + std::to_string(row.size()) + "], got " +
                           std::to_string(kofn->k));
        }
        std::vector<double> delivered;
        delivered.reserve(row.size());
        for (const LatencySample& s : row) {
            if (!s.is_lost()) {
                delivered.push_back(s.latency_ms());
            }
        }
        if (delivered.size() < static_cast<std::size_t>(kofn->k)) {
            return LatencySample::lost();
        }
        std::nth_element(delivered.begin(), delivered.begin() + (kofn->k - 1), delivered.end());
        return LatencySample::delivered(delivered[kofn->k - 1]);
    }
    const AllocationVector& alloc = std::get<Weighted>(strategy).alloc;
    if (alloc.size() != row.size()) {
        throw DimensionMismatch("allocation length != trace row width");
    }
    return decode_time(row, alloc.gamma, alloc.decode_min);
}

std::vector<ReliabilityCurve> playback(const AlignedRows& rows,
                                       std::span<const Strategy> strategies) {
    std::vector<ReliabilityCurve> curves;
    curves.reserve(strategies.size());
    std::vector<LatencySample> outcomes(rows.rows.size(), LatencySample::lost());
    for (const Strategy& strategy : strategies) {
        for (std::size_t r = 0; r < rows.rows.size(); ++r) {
            outcomes[r] = playback_row(rows.rows[r], strategy);
        }
        curves.push_back(empirical_from_samples(outcomes));
    }
    return curves;
}

double ks_distance(const ReliabilityCurve& a, const ReliabilityCurve& b,
                   std::span<const double> extra_grid) {
    std::vector<double> xs(extra_grid.begin(), extra_grid.end());
    for (const ReliabilityCurve* curve : {&a, &b}) {
        if (curve->is_empirical()) {
            for (const CurvePoint& p : curve->points()) {
                xs.push_back(p.x_ms);
            }
        }
    }
    if (xs.empty() && (!a.is_empirical() || !b.is_empirical())) {
        throw std::invalid_argument("ks_distance of parametric curves needs a grid");
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    double sup = std::abs(a.plateau() - b.plateau());
    for (double x : xs) {
        sup = std::max(sup, std::abs(a.eval(x, 0.0) - b.eval(x, 0.0)));
    }
    return sup;
}

PlaybackReport predict_from_marginals(std::span<const Trace> traces,
                                      std::span<const Strategy> strategies) {
    AlignedRows rows = align(traces);
    PlaybackReport report;
    report.rows_used = rows.rows.size();
    report.dropped_probes = rows.dropped_probes;

    // Per-interface marginals over the same aligned rows the playback uses.
    std::vector<ReliabilityCurve> marginals;
    std::vector<double> grid;
    {
        std::vector<LatencySample> column(rows.rows.size(), LatencySample::lost());
        for (std::size_t i = 0; i < rows.interface_names.size(); ++i) {
            for (std::size_t r = 0; r < rows.rows.size(); ++r) {
                column[r] = rows.rows[r][i];
            }
            marginals.push_back(empirical_from_samples(column));
            for (const CurvePoint& p : marginals.back().points()) {
                grid.push_back(p.x_ms);
            }
        }
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }

    std::vector<ReliabilityCurve> measured = playback(rows, strategies);

    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        AllocationVector alloc =
            strategy_allocation(strategies[s], rows.interface_names.size());
        double plateau = eval_weighted(marginals, alloc, 0.0, inf);
        std::vector<CurvePoint> predicted_points;
        predicted_points.reserve(grid.size());
        double running = 0.0;
        for (double x : grid) {
            // The composition is monotone in x; the running max only absorbs
            // last-ulp rounding in the outcome sums.
            double value = eval_weighted(marginals, alloc, 0.0, x);
            running = std::clamp(value, running, plateau);
            predicted_points.push_back({x, running});
        }
        ReliabilityCurve predicted =
            ReliabilityCurve::empirical(std::move(predicted_points), plateau);

        StrategyPlayback entry{strategy_label(strategies[s], rows.interface_names.size()),
                               measured[s], predicted,
                               ks_distance(measured[s], predicted)};
        report.strategies.push_back(std::move(entry));
    }
    return report;
}

}  // namespace ifacediv
