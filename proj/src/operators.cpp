#include "diskvolt/operators.hpp"

#include <algorithm>
#include <cmath>

#include "diskvolt/numerics.hpp"

namespace diskvolt {

namespace {

// growth exponent the S_g criteria pivot on: t* = (2+alpha)/p - (2+beta)/q
double growth_exponent(const SpaceParams& sp_in, const SpaceParams& sp_out) {
    return (2.0 + sp_in.alpha) / sp_in.p - (2.0 + sp_out.alpha) / sp_out.p;
}

void require_embedding_hypothesis(const SpaceParams& sp_in, const SpaceParams& sp_out) {
    if (!(sp_in.p < sp_out.p))
        throw HypothesisViolation("boundedness/compactness criteria require 0 < p < q");
}

Ternary growth_to_bounded(const GrowthProfile& profile) {
    switch (profile.trend) {
        case GrowthTrend::LittleO:
        case GrowthTrend::BigOOnly: return Ternary::Holds;
        case GrowthTrend::Neither: return Ternary::Fails;
        case GrowthTrend::Inconclusive: return Ternary::Inconclusive;
    }
    return Ternary::Inconclusive;
}

Ternary growth_to_compact(const GrowthProfile& profile) {
    switch (profile.trend) {
        case GrowthTrend::LittleO: return Ternary::Holds;
        case GrowthTrend::BigOOnly:
        case GrowthTrend::Neither: return Ternary::Fails;
        case GrowthTrend::Inconclusive: return Ternary::Inconclusive;
    }
    return Ternary::Inconclusive;
}

// Verdicts rest on decay trends, so their evidence is trusted at a much
// looser relative accuracy than norm outputs. Divergence is a finding, not
// a quadrature failure.
constexpr double kEvidenceRelTol = 1e-5;

bool evidence_trusted(const IntegralResult& res) {
    return res.diverged || res.tolerance_ok ||
           res.error_estimate <= kEvidenceRelTol * std::abs(res.value);
}

// Weighted integral of |w(z)|^q v^exponent [ * log(2/v)^log_exponent ]
NamedIntegral weighted_integral(std::string name, const AnalyticFn& w, double q, double exponent,
                                double log_exponent, const CheckConfig& cfg) {
    QuadratureConfig quad = cfg.quad;
    for (double a : w.singular_angles()) quad.singular_angles.push_back(a);
    auto density = [&w, q, exponent, log_exponent](Complex z, double v) {
        double out = std::pow(std::abs(w(z)), q) * std::pow(v, exponent);
        if (log_exponent != 0.0) out *= std::pow(std::log(2.0 / v), log_exponent);
        return out;
    };
    const IntegralResult res = integrate_disk(density, quad);
    const ConvergenceCall call =
        assess_convergence(res.level_profile, res.diverged, res.value, cfg.convergence_band);
    NamedIntegral out;
    out.name = std::move(name);
    out.finite = call.finite;
    out.value = res.value;
    out.decay = call.decay;
    out.diverged = res.diverged;
    out.tolerance_ok = evidence_trusted(res);
    return out;
}

// g in D^q_beta, decided through the total mass of mu_{g,q,beta}.
NamedIntegral dirichlet_membership(const AnalyticFn& g, const SpaceParams& sp_out,
                                   const CheckConfig& cfg) {
    const NormResult mass =
        total_mass(MeasureSpec::volterra(g, sp_out.p, sp_out.alpha), cfg.quad);
    const ConvergenceCall call =
        assess_convergence(mass.level_profile, mass.diverged, mass.value, cfg.convergence_band);
    NamedIntegral out;
    out.name = "dirichlet-mass";
    out.finite = call.finite;
    out.value = mass.value;
    out.decay = call.decay;
    out.diverged = mass.diverged;
    out.tolerance_ok = mass.diverged || mass.tolerance_ok ||
                       mass.error_estimate <= kEvidenceRelTol * std::abs(mass.value);
    return out;
}

// The T_g square-mass condition, selected by the source-space regime.
CriterionVerdict volterra_measure_condition(const AnalyticFn& g, const SpaceParams& sp_in,
                                            const SpaceParams& sp_out, CarlesonMode mode,
                                            const CheckConfig& cfg) {
    CriterionVerdict verdict;
    verdict.op = OperatorKind::Tg;
    verdict.regime = sp_in.regime;
    const double q = sp_out.p;
    const double beta = sp_out.alpha;

    if (sp_in.regime == Regime::Supercritical) {
        // finite measure, equivalently g in D^q_beta; boundedness and
        // compactness share this criterion
        verdict.criterion = "finite-mass";
        NamedIntegral membership = dirichlet_membership(g, sp_out, cfg);
        verdict.holds = membership.finite;
        verdict.quad_ok = membership.tolerance_ok;
        verdict.threshold = ThresholdData{0.0, membership.decay};
        verdict.integral_evidence.push_back(std::move(membership));
        return verdict;
    }

    const MeasureSpec mu = MeasureSpec::volterra(g, q, beta);
    Gauge gauge{PowerGauge{1.0}};
    if (sp_in.regime == Regime::Subcritical) {
        const double s = q * (sp_in.alpha + 2.0 - sp_in.p) / sp_in.p;
        gauge = PowerGauge{s};
        verdict.criterion = mode == CarlesonMode::BoundedConstant ? "carleson:power"
                                                                  : "carleson:power-vanishing";
        verdict.threshold = ThresholdData{s, 0.0};
    } else {
        const double e = (1.0 / sp_in.p - 1.0) * q;
        gauge = LogGauge{e};
        verdict.criterion =
            mode == CarlesonMode::BoundedConstant ? "carleson:log" : "carleson:log-vanishing";
        verdict.threshold = ThresholdData{e, 0.0};
    }

    const CarlesonProfile profile =
        carleson_profile(mu, gauge, cfg.profile_levels, cfg.quad, Exec::Parallel, cfg.profile);
    const CarlesonClassification cls = classify_carleson(profile, mode, cfg.slope_tol);
    verdict.holds = cls.holds;
    verdict.threshold->measured = cls.slope;
    verdict.carleson_evidence = cls;
    for (const auto& stat : profile.levels) verdict.quad_ok = verdict.quad_ok && stat.quad_ok;
    return verdict;
}

CriterionVerdict growth_condition(const AnalyticFn& g, const SpaceParams& sp_in,
                                  const SpaceParams& sp_out, CheckMode mode,
                                  const CheckConfig& cfg) {
    CriterionVerdict verdict;
    verdict.op = OperatorKind::Sg;
    verdict.mode = mode;
    verdict.regime = sp_in.regime;
    const double t = growth_exponent(sp_in, sp_out);
    verdict.criterion = mode == CheckMode::Compact ? "growth:littleO" : "growth:bigO";
    GrowthProfile profile =
        classify_growth(g, t, cfg.growth_radii, cfg.quad.angular_nodes, cfg.growth_slope_tol);
    verdict.holds = mode == CheckMode::Compact ? growth_to_compact(profile)
                                               : growth_to_bounded(profile);
    verdict.threshold = ThresholdData{t, profile.slope};
    verdict.growth_evidence = std::move(profile);
    return verdict;
}

CriterionVerdict conjunction(CriterionVerdict a, const CriterionVerdict& b) {
    a.holds = ternary_and(a.holds, b.holds);
    a.criterion += " && " + b.criterion;
    a.quad_ok = a.quad_ok && b.quad_ok;
    if (!a.growth_evidence && b.growth_evidence) a.growth_evidence = b.growth_evidence;
    if (!a.carleson_evidence && b.carleson_evidence) a.carleson_evidence = b.carleson_evidence;
    for (const auto& e : b.integral_evidence) a.integral_evidence.push_back(e);
    return a;
}

}  // namespace

const char* audit_chain_name(AuditChain chain) {
    switch (chain) {
        case AuditChain::SupercriticalVolterra: return "supercritical-volterra";
        case AuditChain::SubcriticalOrderBounded: return "subcritical-order-bounded";
    }
    return "?";
}

const char* operator_name(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Tg: return "Tg";
        case OperatorKind::Sg: return "Sg";
        case OperatorKind::Mg: return "Mg";
    }
    return "?";
}

const char* check_mode_name(CheckMode mode) {
    switch (mode) {
        case CheckMode::Bounded: return "bounded";
        case CheckMode::Compact: return "compact";
        case CheckMode::OrderBounded: return "order-bounded";
    }
    return "?";
}

const char* growth_trend_name(GrowthTrend trend) {
    switch (trend) {
        case GrowthTrend::LittleO: return "littleO";
        case GrowthTrend::BigOOnly: return "bigO";
        case GrowthTrend::Neither: return "neither";
        case GrowthTrend::Inconclusive: return "inconclusive";
    }
    return "?";
}

AnalyticFn apply(OperatorKind kind, const AnalyticFn& g, const AnalyticFn& f, int degree) {
    switch (kind) {
        case OperatorKind::Tg: return antidifferentiate(multiply(f, g.derivative(), degree));
        case OperatorKind::Sg: return antidifferentiate(multiply(f.derivative(), g, degree));
        case OperatorKind::Mg: return multiply(g, f, degree);
    }
    throw std::invalid_argument("apply: unknown operator kind");
}

AnalyticFn make_test_function(TestFunctionKind kind, DiskPoint a, const SpaceParams& sp) {
    const Complex z = a.z;
    const double v = 1.0 - std::norm(z);
    const double ap = (sp.alpha + 2.0) / sp.p;
    switch (kind) {
        case TestFunctionKind::PeakKernel: return peak_kernel(z, sp);
        case TestFunctionKind::PeakKernelZeroed:
            return AnalyticFn::sum(
                {peak_kernel(z, sp),
                 AnalyticFn::constant(-std::pow(v, (sp.p - sp.alpha - 2.0) / sp.p))});
        case TestFunctionKind::DerivativeDual:
            return AnalyticFn::sum(
                {AnalyticFn::power_kernel(z, 2.0 * ap - 1.0, std::pow(v, ap)),
                 AnalyticFn::power_kernel(z, 2.0 * ap, -std::pow(v, ap + 1.0))});
        case TestFunctionKind::LogDual: {
            const double big_log = std::log(2.0 / v);
            return AnalyticFn::sum(
                {AnalyticFn::log_kernel(z, 1, std::pow(big_log, -1.0 / sp.p)),
                 AnalyticFn::log_kernel(z, 2, -std::pow(big_log, -1.0 / sp.p - 1.0))});
        }
    }
    throw std::invalid_argument("make_test_function: unknown kind");
}

GrowthProfile classify_growth(const AnalyticFn& g, double t, int radii_levels,
                              int angular_samples, double slope_tol) {
    if (radii_levels < 8)
        throw std::invalid_argument("classify_growth: need at least 8 radius levels");
    angular_samples = std::max(32, angular_samples);

    GrowthProfile profile;
    profile.exponent_t = t;
    const std::vector<double> hints = g.singular_angles();
    const double local[] = {0.0,  0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0,
                            4.0, -4.0,  8.0,  -8.0, 16.0, -16.0, 32.0, -32.0};

    for (int k = 1; k <= radii_levels; ++k) {
        const double d = std::ldexp(1.0, -k);
        const double v = d * (2.0 - d);  // 1 - r^2, exact
        const double r = 1.0 - d;
        const double vt = std::pow(v, t);
        double m = 0.0;
        for (int i = 0; i < angular_samples; ++i) {
            const double theta = 2.0 * M_PI * i / angular_samples;
            m = std::max(m, std::abs(g(std::polar(r, theta))));
        }
        for (double hint : hints)
            for (double offset : local)
                m = std::max(m, std::abs(g(std::polar(r, hint + offset * d))));
        profile.radii.push_back(r);
        profile.values.push_back(m * vt);
    }

    // fit on the trailing half of the radii
    std::vector<double> xs, ys;
    const int fit_from = radii_levels / 2;
    double first_window = 0.0;
    for (int k = fit_from; k <= radii_levels; ++k) {
        const double m = profile.values[static_cast<std::size_t>(k - 1)];
        if (!(m > 0.0)) continue;
        if (first_window == 0.0) first_window = m;
        const double d = std::ldexp(1.0, -k);
        xs.push_back(std::log(d * (2.0 - d)));
        ys.push_back(std::log(m));
    }
    const double last = profile.values.back();

    if (xs.size() < 3) {
        // identically zero (or nearly so) symbols vanish in every sense
        const double peak = *std::max_element(profile.values.begin(), profile.values.end());
        profile.trend = peak < 1e-300 ? GrowthTrend::LittleO : GrowthTrend::Inconclusive;
        return profile;
    }
    profile.slope = fit_line(xs, ys).slope;

    if (profile.slope >= slope_tol && last <= 0.25 * first_window)
        profile.trend = GrowthTrend::LittleO;
    else if (profile.slope >= -slope_tol)
        profile.trend = GrowthTrend::BigOOnly;
    else if (last >= 1.5 * first_window)
        profile.trend = GrowthTrend::Neither;
    else
        profile.trend = GrowthTrend::Inconclusive;
    return profile;
}

CriterionVerdict check_bounded(OperatorKind kind, const AnalyticFn& g, const SpaceParams& sp_in,
                               const SpaceParams& sp_out, const CheckConfig& cfg) {
    require_embedding_hypothesis(sp_in, sp_out);
    CriterionVerdict verdict;
    switch (kind) {
        case OperatorKind::Tg:
            verdict = volterra_measure_condition(g, sp_in, sp_out, CarlesonMode::BoundedConstant,
                                                 cfg);
            break;
        case OperatorKind::Sg:
            verdict = growth_condition(g, sp_in, sp_out, CheckMode::Bounded, cfg);
            break;
        case OperatorKind::Mg:
            verdict = conjunction(
                volterra_measure_condition(g, sp_in, sp_out, CarlesonMode::BoundedConstant, cfg),
                growth_condition(g, sp_in, sp_out, CheckMode::Bounded, cfg));
            break;
    }
    verdict.op = kind;
    verdict.mode = CheckMode::Bounded;
    verdict.regime = sp_in.regime;
    return verdict;
}

CriterionVerdict check_compact(OperatorKind kind, const AnalyticFn& g, const SpaceParams& sp_in,
                               const SpaceParams& sp_out, const CheckConfig& cfg) {
    require_embedding_hypothesis(sp_in, sp_out);
    CriterionVerdict verdict;
    switch (kind) {
        case OperatorKind::Tg:
            verdict = volterra_measure_condition(g, sp_in, sp_out, CarlesonMode::Vanishing, cfg);
            break;
        case OperatorKind::Sg:
            verdict = growth_condition(g, sp_in, sp_out, CheckMode::Compact, cfg);
            break;
        case OperatorKind::Mg:
            verdict = conjunction(
                volterra_measure_condition(g, sp_in, sp_out, CarlesonMode::Vanishing, cfg),
                growth_condition(g, sp_in, sp_out, CheckMode::Compact, cfg));
            break;
    }
    verdict.op = kind;
    verdict.mode = CheckMode::Compact;
    verdict.regime = sp_in.regime;
    return verdict;
}

CriterionVerdict check_order_bounded(OperatorKind kind, const AnalyticFn& g,
                                     const SpaceParams& sp_in, const SpaceParams& sp_out,
                                     const CheckConfig& cfg) {
    CriterionVerdict verdict;
    verdict.op = kind;
    verdict.mode = CheckMode::OrderBounded;
    verdict.regime = sp_in.regime;
    const double p = sp_in.p;
    const double alpha = sp_in.alpha;
    const double q = sp_out.p;
    const double beta = sp_out.alpha;

    const AnalyticFn g_prime = g.derivative();
    auto tg_sub = [&] {
        return weighted_integral("tg-weighted-derivative", g_prime, q,
                                 beta - q * (alpha + 2.0 - p) / p, 0.0, cfg);
    };
    auto tg_crit = [&] {
        return weighted_integral("tg-log-weighted-derivative", g_prime, q, beta,
                                 -q * (1.0 - p) / p, cfg);
    };
    auto sg_integral = [&] {
        return weighted_integral("sg-weighted-symbol", g, q, beta - q * (alpha + 2.0) / p, 0.0,
                                 cfg);
    };

    switch (kind) {
        case OperatorKind::Tg:
            switch (sp_in.regime) {
                case Regime::Subcritical:
                    verdict.criterion = "integral:derivative-power-weight";
                    verdict.integral_evidence.push_back(tg_sub());
                    break;
                case Regime::Critical:
                    verdict.criterion = "integral:derivative-log-weight";
                    verdict.integral_evidence.push_back(tg_crit());
                    break;
                case Regime::Supercritical:
                    verdict.criterion = "finite-mass";
                    verdict.integral_evidence.push_back(dirichlet_membership(g, sp_out, cfg));
                    break;
            }
            break;
        case OperatorKind::Sg:
            verdict.criterion = "integral:symbol-power-weight";
            verdict.integral_evidence.push_back(sg_integral());
            break;
        case OperatorKind::Mg:
            switch (sp_in.regime) {
                case Regime::Subcritical:
                    verdict.criterion = "integral:symbol-power-weight";
                    verdict.integral_evidence.push_back(sg_integral());
                    break;
                case Regime::Critical:
                    verdict.criterion = "integral:symbol-power-weight && integral:derivative-log-weight";
                    verdict.integral_evidence.push_back(
                        weighted_integral("mg-weighted-symbol", g, q, beta - q, 0.0, cfg));
                    verdict.integral_evidence.push_back(tg_crit());
                    break;
                case Regime::Supercritical:
                    verdict.criterion = "finite-mass && integral:symbol-power-weight";
                    verdict.integral_evidence.push_back(dirichlet_membership(g, sp_out, cfg));
                    verdict.integral_evidence.push_back(sg_integral());
                    break;
            }
            break;
    }

    verdict.holds = Ternary::Holds;
    for (const auto& e : verdict.integral_evidence) {
        verdict.holds = ternary_and(verdict.holds, e.finite);
        verdict.quad_ok = verdict.quad_ok && e.tolerance_ok;
    }
    if (!verdict.integral_evidence.empty()) {
        verdict.threshold =
            ThresholdData{0.0, verdict.integral_evidence.front().decay};
    }
    return verdict;
}

double opnorm_lower_bound(OperatorKind kind, const AnalyticFn& g, const SpaceParams& sp_in,
                          const SpaceParams& sp_out, const std::vector<AnalyticFn>& family,
                          const CheckConfig& cfg) {
    if (family.empty()) throw std::invalid_argument("opnorm_lower_bound: empty test family");
    double best = 0.0;
    for (const auto& f : family) {
        const NormResult in_norm = dirichlet_norm(f, sp_in, cfg.quad);
        if (in_norm.diverged || !(in_norm.value > 0.0)) continue;
        const AnalyticFn image = apply(kind, g, f, cfg.series_degree);
        QuadratureConfig quad = cfg.quad;
        for (double a : g.singular_angles()) quad.singular_angles.push_back(a);
        for (double a : f.singular_angles()) quad.singular_angles.push_back(a);
        const NormResult out_norm = dirichlet_norm(image, sp_out, quad);
        best = std::max(best, out_norm.value / in_norm.value);
    }
    return best;
}

AuditReport equivalence_audit(const AnalyticFn& g, const SpaceParams& sp_in,
                              const SpaceParams& sp_out, const CheckConfig& cfg) {
    AuditReport report;
    if (sp_in.regime == Regime::Supercritical && sp_in.p < sp_out.p) {
        report.chain = AuditChain::SupercriticalVolterra;
        report.entries.push_back(
            {"Tg bounded", check_bounded(OperatorKind::Tg, g, sp_in, sp_out, cfg).holds});
        report.entries.push_back(
            {"Tg compact", check_compact(OperatorKind::Tg, g, sp_in, sp_out, cfg).holds});
        report.entries.push_back(
            {"Tg order-bounded",
             check_order_bounded(OperatorKind::Tg, g, sp_in, sp_out, cfg).holds});
        report.entries.push_back({"g in D^q_beta", dirichlet_membership(g, sp_out, cfg).finite});
    } else if (sp_in.regime == Regime::Subcritical) {
        report.chain = AuditChain::SubcriticalOrderBounded;
        report.entries.push_back(
            {"Tg order-bounded",
             check_order_bounded(OperatorKind::Tg, g, sp_in, sp_out, cfg).holds});
        report.entries.push_back(
            {"Sg order-bounded",
             check_order_bounded(OperatorKind::Sg, g, sp_in, sp_out, cfg).holds});
        report.entries.push_back(
            {"Mg order-bounded",
             check_order_bounded(OperatorKind::Mg, g, sp_in, sp_out, cfg).holds});
        const NamedIntegral membership = weighted_integral(
            "bergman-mass", g, sp_out.p,
            sp_out.alpha - sp_out.p * (sp_in.alpha + 2.0) / sp_in.p, 0.0, cfg);
        report.entries.push_back({"g in weighted Bergman class", membership.finite});
    } else {
        throw HypothesisViolation("equivalence_audit: parameters match neither equivalence chain");
    }

    for (std::size_t i = 0; i < report.entries.size(); ++i)
        for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
            const Ternary a = report.entries[i].verdict;
            const Ternary b = report.entries[j].verdict;
            if (a == Ternary::Inconclusive || b == Ternary::Inconclusive) continue;
            if (a != b)
                report.disagreements.emplace_back(report.entries[i].name, report.entries[j].name);
        }
    return report;
}

std::vector<std::pair<std::string, AnalyticFn>> builtin_symbol_battery() {
    std::vector<std::pair<std::string, AnalyticFn>> battery;
    battery.emplace_back("zero", AnalyticFn::zero());
    battery.emplace_back("const 1", AnalyticFn::constant(Complex(1.0)));
    battery.emplace_back("const 2.5", AnalyticFn::constant(Complex(2.5)));
    battery.emplace_back("z", AnalyticFn::monomial(1));
    battery.emplace_back("z^2", AnalyticFn::monomial(2));
    battery.emplace_back("z^5", AnalyticFn::monomial(5));
    battery.emplace_back("1 + z - 2z^3",
                         AnalyticFn::series({Complex(1.0), Complex(1.0), Complex(0.0), Complex(-2.0)}));
    battery.emplace_back("i z^2 + 0.5", AnalyticFn::series({Complex(0.5), Complex(0.0), Complex(0.0, 1.0)}));
    for (double gamma : {-0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0, 1.25, 1.6, 2.2}) {
        battery.emplace_back("pow(a=1, gamma=" + std::to_string(gamma) + ")",
                             AnalyticFn::power_kernel(Complex(1.0), gamma));
    }
    battery.emplace_back("pow rotated",
                         AnalyticFn::power_kernel(std::polar(1.0, 2.0 * M_PI / 3.0), 0.6));
    battery.emplace_back("pow interior", AnalyticFn::power_kernel(Complex(0.7), 1.1));
    battery.emplace_back("log m=1", AnalyticFn::log_kernel(Complex(1.0), 1));
    battery.emplace_back("log m=2", AnalyticFn::log_kernel(Complex(1.0), 2));
    battery.emplace_back(
        "pow + poly", AnalyticFn::sum({AnalyticFn::power_kernel(Complex(1.0), 0.4),
                                       AnalyticFn::series({Complex(0.0), Complex(2.0)})}));
    battery.emplace_back(
        "pow * log", AnalyticFn::product({AnalyticFn::power_kernel(Complex(1.0), 0.3),
                                          AnalyticFn::log_kernel(Complex(1.0), 1)}));
    return battery;
}

}  // namespace diskvolt
