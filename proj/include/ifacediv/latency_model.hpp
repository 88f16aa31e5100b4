#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace ifacediv {

/// Parametric model of one communication interface. Transmission latency of a
/// b-byte packet is Gaussian with mean (alpha*b + beta)/2 and standard
/// deviation sigma_ratio times that mean; p_succ is the long-term delivery
/// probability, i.e. the plateau the latency-reliability curve saturates at.
struct InterfaceProfile {
    std::string name;
    double alpha = 0.0;        ///< ms per byte
    double beta = 0.0;         ///< ms
    double p_succ = 1.0;       ///< delivery probability in [0,1]
    double sigma_ratio = 0.1;  ///< sigma = sigma_ratio * mu

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// One observed transmission: either a one-way latency or a loss.
class LatencySample {
  public:
    static LatencySample lost() { return LatencySample(); }
    static LatencySample delivered(double latency_ms);

    bool is_lost() const { return lost_; }
    /// Only meaningful when not lost.
    double latency_ms() const { return latency_ms_; }

  private:
    LatencySample() = default;
    double latency_ms_ = 0.0;
    bool lost_ = true;
};

struct CurvePoint {
    double x_ms = 0.0;
    double probability = 0.0;
};

/// Latency-reliability function F(x, b): the probability that a b-byte packet
/// is delivered within deadline x. Either parametric (Gaussian scaled by the
/// delivery plateau) or empirical (right-continuous step function from
/// samples; the bytes argument is ignored because measured traces carry no
/// size-scaling information).
class ReliabilityCurve {
  public:
    static ReliabilityCurve parametric(InterfaceProfile profile);
    /// points must be strictly increasing in x with nondecreasing
    /// probabilities bounded by plateau in [0,1].
    static ReliabilityCurve empirical(std::vector<CurvePoint> points, double plateau);

    double eval(double x_ms, double bytes) const;
    /// Value at x -> +infinity.
    double plateau() const;

    bool is_empirical() const;
    const std::vector<CurvePoint>& points() const;       ///< empirical only
    const InterfaceProfile& profile() const;             ///< parametric only

  private:
    struct Empirical {
        std::vector<CurvePoint> points;
        double plateau = 0.0;
    };
    ReliabilityCurve() = default;
    std::variant<InterfaceProfile, Empirical> body_;
};

/// Mean one-way latency for a packet of the given size: (alpha*bytes + beta)/2.
double mean_latency(const InterfaceProfile& profile, double bytes);

/// p_succ * NormalCDF(x; mu, sigma_ratio*mu). Degenerates to a step at 0 when
/// mu == 0.
double eval_parametric(const InterfaceProfile& profile, double x_ms, double bytes);

/// Empirical CDF over the sample multiset; losses count in the denominator,
/// so the plateau equals delivered/total. Throws EmptyInput.
ReliabilityCurve empirical_from_samples(const std::vector<LatencySample>& samples);

double eval_curve(const ReliabilityCurve& curve, double x_ms, double bytes);

/// Parses {"name":..,"alpha":..,"beta":..,"p_succ":..,"sigma_ratio":..} from a
/// JSON file holding one object or an array of them. sigma_ratio defaults to
/// 0.1 when absent.
std::vector<InterfaceProfile> load_profiles_json(const std::string& path);

}  // namespace ifacediv
