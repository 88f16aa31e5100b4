#include "ifacediv/latency_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "ifacediv/errors.hpp"
#include "ifacediv/normal.hpp"

namespace ifacediv {

void InterfaceProfile::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("profile '" + name + "': alpha must be >= 0");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("profile '" + name + "': beta must be >= 0");
    }
    if (!(p_succ >= 0.0 && p_succ <= 1.0)) {
        throw std::invalid_argument("profile '" + name + "': p_succ must lie in [0,1]");
    }
    if (!(sigma_ratio > 0.0) || !std::isfinite(sigma_ratio)) {
        throw std::invalid_argument("profile '" + name + "': sigma_ratio must be > 0");
    }
}

LatencySample LatencySample::delivered(double latency_ms) {
    if (!std::isfinite(latency_ms) || latency_ms < 0.0) {
        throw std::invalid_argument("latency sample must be finite and nonnegative");
    }
    LatencySample s;
    s.latency_ms_ = latency_ms;
    s.lost_ = false;
    return s;
}

ReliabilityCurve ReliabilityCurve::parametric(InterfaceProfile profile) {
    profile.validate();
    ReliabilityCurve c;
    c.body_ = std::move(profile);
    return c;
}

ReliabilityCurve ReliabilityCurve::empirical(std::vector<CurvePoint> points, double plateau) {
    if (!(plateau >= 0.0 && plateau <= 1.0)) {
        throw std::invalid_argument("empirical curve plateau must lie in [0,1]");
    }
    double prev_x = -std::numeric_limits<double>::infinity();
    double prev_p = 0.0;
    for (const CurvePoint& pt : points) {
        if (!std::isfinite(pt.x_ms) || pt.x_ms <= prev_x) {
            throw std::invalid_argument("empirical curve x values must be strictly increasing");
        }
        if (pt.probability < prev_p || pt.probability > plateau) {
            throw std::invalid_argument(
                "empirical curve probabilities must be nondecreasing and bounded by the plateau");
        }
        prev_x = pt.x_ms;
        prev_p = pt.probability;
    }
    ReliabilityCurve c;
    c.body_ = Empirical{std::move(points), plateau};
    return c;
}

double ReliabilityCurve::eval(double x_ms, double bytes) const {
    if (const auto* prof = std::get_if<InterfaceProfile>(&body_)) {
        return eval_parametric(*prof, x_ms, bytes);
    }
    // Right-continuous step lookup; bytes is ignored for empirical curves.
    const auto& emp = std::get<Empirical>(body_);
    if (std::isinf(x_ms) && x_ms > 0.0) {
        return emp.plateau;
    }
    auto it = std::upper_bound(emp.points.begin(), emp.points.end(), x_ms,
                               [](double x, const CurvePoint& p) { return x < p.x_ms; });
    if (it == emp.points.begin()) {
        return 0.0;
    }
    return std::prev(it)->probability;
}

double ReliabilityCurve::plateau() const {
    if (const auto* prof = std::get_if<InterfaceProfile>(&body_)) {
        return prof->p_succ;
    }
    return std::get<Empirical>(body_).plateau;
}

bool ReliabilityCurve::is_empirical() const {
    return std::holds_alternative<Empirical>(body_);
}

const std::vector<CurvePoint>& ReliabilityCurve::points() const {
    return std::get<Empirical>(body_).points;
}

const InterfaceProfile& ReliabilityCurve::profile() const {
    return std::get<InterfaceProfile>(body_);
}

double mean_latency(const InterfaceProfile& profile, double bytes) {
    if (!(bytes >= 0.0)) {
        throw std::invalid_argument("bytes must be >= 0");
    }
    return (profile.alpha * bytes + profile.beta) / 2.0;
}

double eval_parametric(const InterfaceProfile& profile, double x_ms, double bytes) {
    double mu = mean_latency(profile, bytes);
    if (mu == 0.0) {
        return x_ms >= 0.0 ? profile.p_succ : 0.0;
    }
    if (std::isinf(x_ms)) {
        return x_ms > 0.0 ? profile.p_succ : 0.0;
    }
    double sigma = profile.sigma_ratio * mu;
    return profile.p_succ * normal_cdf((x_ms - mu) / sigma);
}

ReliabilityCurve empirical_from_samples(const std::vector<LatencySample>& samples) {
    if (samples.empty()) {
        throw EmptyInput("empirical_from_samples: no samples");
    }
    std::vector<double> delivered;
    delivered.reserve(samples.size());
    for (const LatencySample& s : samples) {
        if (!s.is_lost()) {
            delivered.push_back(s.latency_ms());
        }
    }
    std::sort(delivered.begin(), delivered.end());

    const double total = static_cast<double>(samples.size());
    std::vector<CurvePoint> points;
    points.reserve(delivered.size());
    for (std::size_t i = 0; i < delivered.size(); ++i) {
        // Collapse ties onto the last index of each distinct latency.
        if (i + 1 < delivered.size() && delivered[i + 1] == delivered[i]) {
            continue;
        }
        points.push_back({delivered[i], static_cast<double>(i + 1) / total});
    }
    return ReliabilityCurve::empirical(std::move(points),
                                       static_cast<double>(delivered.size()) / total);
}

double eval_curve(const ReliabilityCurve& curve, double x_ms, double bytes) {
    return curve.eval(x_ms, bytes);
}

namespace {

InterfaceProfile profile_from_json(const nlohmann::json& j) {
    InterfaceProfile p;
    p.name = j.at("name").get<std::string>();
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    p.p_succ = j.at("p_succ").get<double>();
    p.sigma_ratio = j.value("sigma_ratio", 0.1);
    p.validate();
    return p;
}

}  // namespace

std::vector<InterfaceProfile> load_profiles_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open profile file: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
    std::vector<InterfaceProfile> out;
    try {
        if (doc.is_array()) {
            for (const auto& item : doc) {
                out.push_back(profile_from_json(item));
            }
        } else {
            out.push_back(profile_from_json(doc));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
    if (out.empty()) {
        throw EmptyInput("profile file holds no profiles: " + path);
    }
    return out;
}

}  // namespace ifacediv
