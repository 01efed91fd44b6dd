#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diskvolt/analytic.hpp"
#include "diskvolt/quadrature.hpp"
#include "diskvolt/spaces.hpp"
#include "diskvolt/verdict.hpp"

namespace diskvolt {

// Positive density against normalized area measure.
//   volterra:  (1-|z|^2)^beta |g'(z)|^q dA
//   plain:     (1-|z|^2)^sigma dA
//   explicit:  caller-supplied density
class MeasureSpec {
public:
    static MeasureSpec volterra(AnalyticFn g, double q, double beta);
    // Same measure with g' given directly (the derivative is what enters
    // the density, so symbols are often specified this way).
    static MeasureSpec volterra_from_derivative(AnalyticFn g_prime, double q, double beta);
    static MeasureSpec plain_weight(double sigma);
    static MeasureSpec explicit_density(Integrand density, std::vector<double> hints = {});

    double density(Complex z, double v) const;
    Integrand integrand() const;
    const std::vector<double>& hints() const { return hints_; }

private:
    MeasureSpec() = default;
    struct Volterra {
        AnalyticFn g_prime;
        double q;
        double beta;
    };
    struct Plain {
        double sigma;
    };
    struct Explicit {
        Integrand density;
    };
    std::variant<Plain, Volterra, Explicit> kind_;
    std::vector<double> hints_;
};

// Gauge dividing the square mass:
//   Power(s):  mass / |I|^s
//   Log(e):    mass * log(1/|I|)^(-e)
struct PowerGauge {
    double s;
};
struct LogGauge {
    double e;
};
using Gauge = std::variant<PowerGauge, LogGauge>;

double gauge_value(const Gauge& gauge, double mass, double interval_length);
std::string gauge_name(const Gauge& gauge);

struct LevelStat {
    int level = 0;            // intervals of length 2^-level
    double sup = 0.0;         // sup of gauged masses over the level's intervals
    double argmax_angle = 0.0;
    double error = 0.0;       // quadrature error estimate at the argmax interval
    bool quad_ok = true;
};

struct CarlesonProfile {
    Gauge gauge{PowerGauge{1.0}};
    std::vector<LevelStat> levels;
    double slope = 0.0;  // d log sup / d log |I| over the last half of the levels
    double sup_overall = 0.0;
    int fit_levels = 0;
};

struct ProfileOptions {
    int full_enumeration_levels = 6;  // enumerate all dyadic+shifted intervals up to here
    int zoom_keep = 8;                // argmax intervals tracked per level beyond that
    int square_depth_extra = 14;      // radial levels below each square's own scale
};

// Per-level sup of gauged masses over dyadic intervals plus half-shifted
// copies. Deeper levels probe near the previous level's argmax intervals
// (adaptive zoom) and near the measure's hint angles.
CarlesonProfile carleson_profile(const MeasureSpec& spec, const Gauge& gauge, int levels,
                                 const QuadratureConfig& cfg, Exec policy = Exec::Parallel,
                                 const ProfileOptions& options = {});

enum class CarlesonMode { BoundedConstant, Vanishing };

struct CarlesonClassification {
    Ternary holds = Ternary::Inconclusive;
    CarlesonMode mode = CarlesonMode::BoundedConstant;
    double slope = 0.0;
    double first_sup = 0.0;
    double last_sup = 0.0;
};

CarlesonClassification classify_carleson(const CarlesonProfile& profile, CarlesonMode mode,
                                         double slope_tol = 0.1);

// mass of S(I) and its quadrature error
std::pair<double, double> square_measure(const MeasureSpec& spec, ArcInterval interval,
                                         const QuadratureConfig& cfg,
                                         Exec policy = Exec::Parallel);

// Total measure of the disk, with divergence detection.
NormResult total_mass(const MeasureSpec& spec, const QuadratureConfig& cfg,
                      Exec policy = Exec::Parallel);

// Finiteness call for an integral with a level profile: Holds when the
// per-annulus contributions decay clearly, Fails when they grow clearly,
// Inconclusive inside the dead band around flat.
struct ConvergenceCall {
    Ternary finite = Ternary::Inconclusive;
    double decay = 0.0;  // estimated per-level decay exponent
};

ConvergenceCall assess_convergence(const std::vector<double>& level_profile, bool diverged,
                                   double scale, double band = 0.05);

}  // namespace diskvolt
