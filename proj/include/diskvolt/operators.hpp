#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diskvolt/analytic.hpp"
#include "diskvolt/carleson.hpp"
#include "diskvolt/spaces.hpp"
#include "diskvolt/verdict.hpp"

namespace diskvolt {

enum class OperatorKind { Tg, Sg, Mg };

const char* operator_name(OperatorKind kind);

// (T_g f)(z) = integral_0^z f g',  (S_g f)(z) = integral_0^z f' g,
// (M_g f)(z) = g f. Result is a Series of degree <= N+1; T_g f and S_g f
// vanish at 0.
AnalyticFn apply(OperatorKind kind, const AnalyticFn& g, const AnalyticFn& f,
                 int degree = kDefaultSeriesDegree);

// Closed-form test functions used by the criteria:
//   PeakKernel        f_a, the normalized kernel peaking at a
//   PeakKernelZeroed  F_a = f_a - (1-|a|^2)^((p-alpha-2)/p), F_a(a) = 0
//   DerivativeDual    f_z with f_z(z) = 0, f_z'(z) = -conj(z)(1-|z|^2)^-((alpha+2)/p)
//   LogDual           log-kernel variant of the same construction
enum class TestFunctionKind { PeakKernel, PeakKernelZeroed, DerivativeDual, LogDual };

AnalyticFn make_test_function(TestFunctionKind kind, DiskPoint a, const SpaceParams& sp);

enum class GrowthTrend { LittleO, BigOOnly, Neither, Inconclusive };

const char* growth_trend_name(GrowthTrend trend);

// Radial growth profile M_t(r_k) = max over angular samples of
// |g(z)| (1-|z|^2)^t at |z| = r_k = 1 - 2^-k.
struct GrowthProfile {
    double exponent_t = 0.0;
    std::vector<double> radii;
    std::vector<double> values;
    double slope = 0.0;  // d log M_t / d log(1-r^2) over the trailing half
    GrowthTrend trend = GrowthTrend::Inconclusive;

    bool is_big_o() const { return trend == GrowthTrend::LittleO || trend == GrowthTrend::BigOOnly; }
    bool is_little_o() const { return trend == GrowthTrend::LittleO; }
};

GrowthProfile classify_growth(const AnalyticFn& g, double t, int radii_levels = 28,
                              int angular_samples = 256, double slope_tol = 0.02);

enum class CheckMode { Bounded, Compact, OrderBounded };

const char* check_mode_name(CheckMode mode);

struct CheckConfig {
    QuadratureConfig quad;
    int profile_levels = 12;
    double slope_tol = 0.1;          // Carleson classifier dead band
    int growth_radii = 28;
    double growth_slope_tol = 0.02;  // growth classifier dead band
    double convergence_band = 0.05;  // dead band for integral finiteness calls
    int series_degree = kDefaultSeriesDegree;
    ProfileOptions profile;
};

struct ThresholdData {
    double predicted = 0.0;  // critical exponent the criterion pivots on
    double measured = 0.0;   // slope / decay actually observed
};

struct NamedIntegral {
    std::string name;
    Ternary finite = Ternary::Inconclusive;
    double value = 0.0;
    double decay = 0.0;
    bool diverged = false;
    bool tolerance_ok = true;
};

struct CriterionVerdict {
    OperatorKind op = OperatorKind::Tg;
    CheckMode mode = CheckMode::Bounded;
    Regime regime = Regime::Subcritical;
    Ternary holds = Ternary::Inconclusive;
    std::string criterion;  // which condition was evaluated
    bool quad_ok = true;    // no quadrature tolerance failure in the evidence
    std::optional<ThresholdData> threshold;
    std::optional<CarlesonClassification> carleson_evidence;
    std::optional<GrowthProfile> growth_evidence;
    std::vector<NamedIntegral> integral_evidence;
};

// Boundedness / compactness require 0 < p < q and dispatch on the regime of
// the source space; order boundedness accepts any p, q > 0.
CriterionVerdict check_bounded(OperatorKind kind, const AnalyticFn& g, const SpaceParams& sp_in,
                               const SpaceParams& sp_out, const CheckConfig& cfg);
CriterionVerdict check_compact(OperatorKind kind, const AnalyticFn& g, const SpaceParams& sp_in,
                               const SpaceParams& sp_out, const CheckConfig& cfg);
CriterionVerdict check_order_bounded(OperatorKind kind, const AnalyticFn& g,
                                     const SpaceParams& sp_in, const SpaceParams& sp_out,
                                     const CheckConfig& cfg);

// max over the family of ||apply(kind, g, f)|| / ||f||; a lower bound for
// the operator norm. Family members with divergent input norm are skipped.
double opnorm_lower_bound(OperatorKind kind, const AnalyticFn& g, const SpaceParams& sp_in,
                          const SpaceParams& sp_out, const std::vector<AnalyticFn>& family,
                          const CheckConfig& cfg);

struct AuditEntry {
    std::string name;
    Ternary verdict = Ternary::Inconclusive;
};

enum class AuditChain { SupercriticalVolterra, SubcriticalOrderBounded };

const char* audit_chain_name(AuditChain chain);

struct AuditReport {
    AuditChain chain = AuditChain::SupercriticalVolterra;
    std::vector<AuditEntry> entries;
    std::vector<std::pair<std::string, std::string>> disagreements;
    bool consistent() const { return disagreements.empty(); }
};

// Equivalence audit:
//   supercritical, p < q:  T_g bounded == compact == order bounded == g in D^q_beta
//   subcritical:           T_g / S_g / M_g order bounded == weighted Bergman membership
// Disagreeing non-inconclusive pairs are reported, not thrown.
AuditReport equivalence_audit(const AnalyticFn& g, const SpaceParams& sp_in,
                              const SpaceParams& sp_out, const CheckConfig& cfg);

// Named symbols exercised by the audit command and the consistency batteries.
std::vector<std::pair<std::string, AnalyticFn>> builtin_symbol_battery();

}  // namespace diskvolt
