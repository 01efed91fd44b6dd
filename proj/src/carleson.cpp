#include "diskvolt/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diskvolt/numerics.hpp"

namespace diskvolt {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_positive(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

MeasureSpec MeasureSpec::volterra(AnalyticFn g, double q, double beta) {
    return volterra_from_derivative(g.derivative(), q, beta);
}

MeasureSpec MeasureSpec::volterra_from_derivative(AnalyticFn g_prime, double q, double beta) {
    if (!(q > 0.0)) throw std::invalid_argument("MeasureSpec: q must be > 0");
    if (!(beta > -1.0)) throw std::invalid_argument("MeasureSpec: beta must be > -1");
    MeasureSpec spec;
    spec.hints_ = g_prime.singular_angles();
    spec.kind_ = Volterra{std::move(g_prime), q, beta};
    return spec;
}

MeasureSpec MeasureSpec::plain_weight(double sigma) {
    if (!(sigma > -1.0)) throw std::invalid_argument("MeasureSpec: sigma must be > -1");
    MeasureSpec spec;
    spec.kind_ = Plain{sigma};
    return spec;
}

MeasureSpec MeasureSpec::explicit_density(Integrand density, std::vector<double> hints) {
    MeasureSpec spec;
    spec.kind_ = Explicit{std::move(density)};
    spec.hints_ = std::move(hints);
    return spec;
}

double MeasureSpec::density(Complex z, double v) const {
    struct Visitor {
        Complex z;
        double v;
        double operator()(const Volterra& m) const {
            return std::pow(v, m.beta) * std::pow(std::abs(m.g_prime(z)), m.q);
        }
        double operator()(const Plain& m) const { return std::pow(v, m.sigma); }
        double operator()(const Explicit& m) const { return m.density(z, v); }
    };
    return std::visit(Visitor{z, v}, kind_);
}

Integrand MeasureSpec::integrand() const {
    return [spec = *this](Complex z, double v) { return spec.density(z, v); };
}

double gauge_value(const Gauge& gauge, double mass, double interval_length) {
    if (const auto* p = std::get_if<PowerGauge>(&gauge)) {
        if (!(p->s > 0.0)) throw std::invalid_argument("PowerGauge: s must be > 0");
        return mass * std::pow(interval_length, -p->s);
    }
    const auto& lg = std::get<LogGauge>(gauge);
    if (!(interval_length < 1.0))
        throw std::invalid_argument("LogGauge: interval length must be < 1");
    return mass * std::pow(std::log(1.0 / interval_length), -lg.e);
}

std::string gauge_name(const Gauge& gauge) {
    if (const auto* p = std::get_if<PowerGauge>(&gauge))
        return "power(" + std::to_string(p->s) + ")";
    return "log(" + std::to_string(std::get<LogGauge>(gauge).e) + ")";
}

std::pair<double, double> square_measure(const MeasureSpec& spec, ArcInterval interval,
                                         const QuadratureConfig& cfg, Exec policy) {
    QuadratureConfig merged = cfg;
    for (double a : spec.hints()) merged.singular_angles.push_back(a);
    const IntegralResult res =
        integrate_square(spec.integrand(), CarlesonSquareRegion(interval), merged, policy);
    return {res.value, res.error_estimate};
}

CarlesonProfile carleson_profile(const MeasureSpec& spec, const Gauge& gauge, int levels,
                                 const QuadratureConfig& cfg, Exec policy,
                                 const ProfileOptions& options) {
    if (levels < 4) throw std::invalid_argument("carleson_profile: need at least 4 levels");
    cfg.validate();
    (void)gauge_value(gauge, 0.0, 0.5);  // validate gauge parameters up front

    QuadratureConfig base = cfg;
    for (double a : spec.hints()) base.singular_angles.push_back(a);
    const Integrand density = spec.integrand();

    CarlesonProfile profile;
    profile.gauge = gauge;
    std::vector<double> tracked;  // argmax angles carried to the next level

    for (int level = 1; level <= levels; ++level) {
        const double h = std::ldexp(1.0, -level);
        const double arc_rad = kTwoPi * h;

        std::vector<double> centers;
        if (level <= options.full_enumeration_levels) {
            const int count = 1 << level;
            centers.reserve(2 * static_cast<std::size_t>(count));
            for (int j = 0; j < count; ++j) {
                centers.push_back(arc_rad * (j + 0.5));  // dyadic interval
                centers.push_back(arc_rad * (j + 1.0));  // half-shifted copy
            }
        } else {
            for (double parent : tracked)
                for (int m = -2; m <= 2; ++m) centers.push_back(parent + m * 0.5 * arc_rad);
            for (double hint : base.singular_angles)
                for (int m = -1; m <= 1; ++m) centers.push_back(hint + m * 0.5 * arc_rad);
            if (centers.empty()) centers.push_back(0.5 * arc_rad);
        }
        for (double& c : centers) c = wrap_positive(c);
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end(),
                                  [&](double a, double b) { return b - a < arc_rad / 8.0; }),
                      centers.end());

        QuadratureConfig square_cfg = base;
        square_cfg.radial_levels = std::clamp(level + options.square_depth_extra, 4,
                                              std::max(4, cfg.radial_levels));

        struct Cell {
            double gauged = 0.0;
            double error = 0.0;
            bool ok = true;
        };
        std::vector<Cell> cells(centers.size());
        const int count = static_cast<int>(centers.size());
        const bool parallel = policy == Exec::Parallel && max_threads() > 1 && count > 1;
#pragma omp parallel for schedule(dynamic) num_threads(max_threads()) if (parallel)
        for (int i = 0; i < count; ++i) {
            const IntegralResult res = integrate_square(
                density, CarlesonSquareRegion(ArcInterval{centers[static_cast<std::size_t>(i)], h}),
                square_cfg, Exec::Serial);
            Cell& cell = cells[static_cast<std::size_t>(i)];
            cell.gauged = gauge_value(gauge, std::max(0.0, res.value), h);
            cell.error = res.error_estimate;
            // trusted at profile accuracy; divergent squares stay marked
            // since their masses are saturated lower bounds
            cell.ok = (res.tolerance_ok ||
                       res.error_estimate <= 1e-5 * std::abs(res.value)) &&
                      !res.diverged;
        }

        LevelStat stat;
        stat.level = level;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].gauged > stat.sup) {
                stat.sup = cells[i].gauged;
                stat.argmax_angle = centers[i];
                stat.error = cells[i].error;
            }
            stat.quad_ok = stat.quad_ok && cells[i].ok;
        }
        profile.levels.push_back(stat);
        profile.sup_overall = std::max(profile.sup_overall, stat.sup);

        // keep the strongest distinct angles for the next level's zoom
        std::vector<std::size_t> order(cells.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (cells[a].gauged != cells[b].gauged) return cells[a].gauged > cells[b].gauged;
            return centers[a] < centers[b];
        });
        tracked.clear();
        for (std::size_t idx : order) {
            if (static_cast<int>(tracked.size()) >= options.zoom_keep) break;
            tracked.push_back(centers[idx]);
        }
    }

    // slope of log sup against log |I| over the trailing half of the levels
    std::vector<double> xs, ys;
    const int fit_from = std::max(1, levels - std::max(levels / 2, 3) + 1);
    for (const auto& stat : profile.levels) {
        if (stat.level < fit_from || !(stat.sup > 0.0)) continue;
        xs.push_back(-stat.level * std::log(2.0));
        ys.push_back(std::log(stat.sup));
    }
    profile.fit_levels = static_cast<int>(xs.size());
    if (xs.size() >= 2) profile.slope = fit_line(xs, ys).slope;
    return profile;
}

CarlesonClassification classify_carleson(const CarlesonProfile& profile, CarlesonMode mode,
                                         double slope_tol) {
    CarlesonClassification out;
    out.mode = mode;
    out.slope = profile.slope;
    if (profile.levels.empty()) return out;
    out.first_sup = profile.levels.front().sup;
    out.last_sup = profile.levels.back().sup;

    // the zero measure is an s-Carleson measure, vanishing included
    if (profile.sup_overall < 1e-300) {
        out.holds = Ternary::Holds;
        return out;
    }

    bool non_increasing = true;
    for (std::size_t i = 0; i + 1 < profile.levels.size(); ++i)
        non_increasing = non_increasing &&
                         profile.levels[i + 1].sup <= profile.levels[i].sup * (1.0 + 1e-9);

    switch (mode) {
        case CarlesonMode::BoundedConstant:
            if (non_increasing || profile.slope >= -slope_tol)
                out.holds = Ternary::Holds;
            else if (profile.slope <= -slope_tol && out.last_sup >= 2.0 * out.first_sup)
                out.holds = Ternary::Fails;
            else
                out.holds = Ternary::Inconclusive;
            break;
        case CarlesonMode::Vanishing:
            if (profile.slope >= slope_tol && out.last_sup <= 0.25 * out.first_sup)
                out.holds = Ternary::Holds;
            else if (profile.slope <= -slope_tol && out.last_sup >= 2.0 * out.first_sup)
                out.holds = Ternary::Fails;  // gauged masses grow
            else if (profile.slope < slope_tol && out.last_sup > 0.25 * out.first_sup)
                out.holds = Ternary::Fails;  // levels off at a positive constant
            else
                out.holds = Ternary::Inconclusive;
            break;
    }
    return out;
}

NormResult total_mass(const MeasureSpec& spec, const QuadratureConfig& cfg, Exec policy) {
    QuadratureConfig merged = cfg;
    for (double a : spec.hints()) merged.singular_angles.push_back(a);
    const IntegralResult res = integrate_disk(spec.integrand(), merged, policy);
    NormResult out;
    out.value = res.value;
    out.error_estimate = res.error_estimate;
    out.diverged = res.diverged;
    out.tolerance_ok = res.tolerance_ok;
    out.level_profile = res.level_profile;
    return out;
}

ConvergenceCall assess_convergence(const std::vector<double>& level_profile, bool diverged,
                                   double scale, double band) {
    ConvergenceCall out;
    double largest = 0.0;
    for (double c : level_profile) largest = std::max(largest, std::abs(c));
    if (largest <= 1e-13 * std::max(std::abs(scale), 1.0)) {
        out.finite = Ternary::Holds;  // nothing near the boundary
        out.decay = std::numeric_limits<double>::infinity();
        return out;
    }
    const double sigma = decay_exponent(level_profile);
    if (std::isnan(sigma)) return out;
    out.decay = sigma;
    if (sigma <= -band)
        out.finite = Ternary::Fails;
    else if (sigma >= band && !diverged)
        out.finite = Ternary::Holds;
    else
        out.finite = Ternary::Inconclusive;
    return out;
}

}  // namespace diskvolt
