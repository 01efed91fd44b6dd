#include "diskvolt/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace diskvolt {

namespace {

constexpr double kRegimeTol = 1e-12;

// Merge hint angles from the config and the function itself; bump the base
// angular budget for high-degree series so smooth oscillation stays resolved.
QuadratureConfig norm_config(const AnalyticFn& f, const QuadratureConfig& cfg) {
    QuadratureConfig out = cfg;
    for (double a : f.singular_angles()) out.singular_angles.push_back(a);
    if (const auto* coeffs = f.series_coeffs()) {
        const int degree = static_cast<int>(coeffs->size()) - 1;
        const int wanted = std::max(cfg.angular_nodes, std::min(2 * degree, 1024));
        out.angular_nodes = (wanted + 3) / 4 * 4;
    }
    return out;
}

NormResult norm_from_integral(const IntegralResult& integral, double zeroth_power_term, double p) {
    NormResult out;
    out.level_profile = integral.level_profile;
    out.diverged = integral.diverged;
    out.tolerance_ok = integral.tolerance_ok;
    const double total = std::max(0.0, integral.value) + zeroth_power_term;
    out.value = total > 0.0 ? std::pow(total, 1.0 / p) : 0.0;
    out.error_estimate =
        total > 0.0 ? out.value * integral.error_estimate / (p * total) : integral.error_estimate;
    return out;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Subcritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
    }
    return "?";
}

SpaceParams::SpaceParams(double p_, double alpha_) : p(p_), alpha(alpha_) {
    if (!(p > 0.0)) throw std::invalid_argument("SpaceParams: p must be > 0");
    if (!(alpha > -1.0)) throw std::invalid_argument("SpaceParams: alpha must be > -1");
    const double gap = p - (alpha + 2.0);
    regime = std::abs(gap) <= kRegimeTol ? Regime::Critical
             : gap < 0.0                 ? Regime::Subcritical
                                         : Regime::Supercritical;
}

NormResult bergman_norm(const AnalyticFn& f, const SpaceParams& sp, const QuadratureConfig& cfg,
                        Exec policy) {
    const double p = sp.p;
    const double alpha = sp.alpha;
    auto integrand = [&f, p, alpha](Complex z, double v) {
        return std::pow(std::abs(f(z)), p) * std::pow(v, alpha);
    };
    return norm_from_integral(integrate_disk(integrand, norm_config(f, cfg), policy), 0.0, p);
}

NormResult dirichlet_norm(const AnalyticFn& f, const SpaceParams& sp, const QuadratureConfig& cfg,
                          Exec policy) {
    const AnalyticFn fp = f.derivative();
    const double p = sp.p;
    const double alpha = sp.alpha;
    auto integrand = [&fp, p, alpha](Complex z, double v) {
        return std::pow(std::abs(fp(z)), p) * std::pow(v, alpha);
    };
    const double head = std::pow(std::abs(f(Complex(0.0))), p);
    return norm_from_integral(integrate_disk(integrand, norm_config(fp, cfg), policy), head, p);
}

AnalyticFn peak_kernel(Complex a, const SpaceParams& sp) {
    const double exponent = 2.0 * (sp.alpha + 2.0) / sp.p - 1.0;
    const double scale = std::pow(1.0 - std::norm(a), (sp.alpha + 2.0) / sp.p);
    return AnalyticFn::power_kernel(a, exponent, scale);
}

PointEvalEstimate point_eval_norm(DiskPoint z, const SpaceParams& sp, EvalKind kind,
                                  const QuadratureConfig& cfg) {
    const double v = 1.0 - std::norm(z.z);
    PointEvalEstimate out;

    switch (kind) {
        case EvalKind::Value:
            switch (sp.regime) {
                case Regime::Subcritical:
                    out.predicted_rate = std::pow(v, -(sp.alpha + 2.0 - sp.p) / sp.p);
                    break;
                case Regime::Critical:
                    out.predicted_rate = std::pow(std::log(2.0 / v), (sp.p - 1.0) / sp.p);
                    break;
                case Regime::Supercritical:
                    out.predicted_rate = 1.0;
                    break;
            }
            break;
        case EvalKind::Derivative:
            out.predicted_rate = std::pow(v, -(sp.alpha + 2.0) / sp.p);
            break;
    }

    // Test family: the peak kernels along the ray through z (including the
    // one centered at z) plus a few monomials. The critical regime needs the
    // log kernels to reach the predicted rate.
    std::vector<AnalyticFn> family;
    const double phase = std::abs(z.z) > 0.0 ? std::arg(z.z) : 0.0;
    const Complex dir = std::polar(1.0, phase);
    family.push_back(peak_kernel(z.z, sp));
    for (int j = 1; j <= 10; ++j) {
        const double t = 1.0 - std::ldexp(1.0, -j);
        family.push_back(peak_kernel(t * dir, sp));
        if (sp.regime == Regime::Critical) family.push_back(AnalyticFn::log_kernel(t * dir, 1));
    }
    if (sp.regime == Regime::Critical) family.push_back(AnalyticFn::log_kernel(z.z, 1));
    for (int n : {0, 1, 2, 4, 8, 16}) family.push_back(AnalyticFn::monomial(n));

    for (const auto& member : family) {
        const NormResult norm = dirichlet_norm(member, sp, cfg);
        if (norm.diverged || !(norm.value > 0.0)) continue;
        const AnalyticFn probe = kind == EvalKind::Value ? member : member.derivative();
        const double ratio = std::abs(probe(z.z)) / norm.value;
        out.lower_bound = std::max(out.lower_bound, ratio);
    }
    return out;
}

}  // namespace diskvolt
