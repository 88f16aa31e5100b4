#include "ifacediv/output.hpp"

#include <cstdio>
#include <cstdlib>

namespace ifacediv {

std::string format_sig12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double round_sig12(double value) {
    return std::strtod(format_sig12(value).c_str(), nullptr);
}

void write_curve_csv(std::ostream& out, const ReliabilityCurve& curve) {
    out << "x_ms,reliability\n";
    for (const CurvePoint& p : curve.points()) {
        out << format_sig12(p.x_ms) << ',' << format_sig12(p.probability) << '\n';
    }
}

nlohmann::ordered_json curve_to_json(const ReliabilityCurve& curve, std::size_t max_points) {
    const auto& pts = curve.points();
    nlohmann::ordered_json x = nlohmann::ordered_json::array();
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    if (!pts.empty() && max_points > 0) {
        std::size_t count = std::min(pts.size(), max_points);
        for (std::size_t j = 0; j < count; ++j) {
            // Even decimation by index, endpoints included.
            std::size_t i = count == 1 ? 0 : j * (pts.size() - 1) / (count - 1);
            x.push_back(round_sig12(pts[i].x_ms));
            r.push_back(round_sig12(pts[i].probability));
        }
    }
    nlohmann::ordered_json j;
    j["x_ms"] = std::move(x);
    j["reliability"] = std::move(r);
    j["plateau"] = round_sig12(curve.plateau());
    return j;
}

}  // namespace ifacediv
