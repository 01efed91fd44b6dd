#pragma once

#include <vector>

#include "diskvolt/analytic.hpp"
#include "diskvolt/quadrature.hpp"

namespace diskvolt {

// Trichotomy against p = alpha + 2; every criterion in the toolkit
// dispatches on it.
enum class Regime { Subcritical, Critical, Supercritical };

const char* regime_name(Regime r);

struct SpaceParams {
    SpaceParams(double p_, double alpha_);
    double p;
    double alpha;
    Regime regime;
};

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool diverged = false;  // value is a lower bound only
    bool tolerance_ok = true;
    std::vector<double> level_profile;  // per-annulus contributions of the p-th power integral
};

// (integral |f|^p (1-|z|^2)^alpha dA)^(1/p)
NormResult bergman_norm(const AnalyticFn& f, const SpaceParams& sp, const QuadratureConfig& cfg,
                        Exec policy = Exec::Parallel);

// (|f(0)|^p + integral |f'|^p (1-|z|^2)^alpha dA)^(1/p)
NormResult dirichlet_norm(const AnalyticFn& f, const SpaceParams& sp, const QuadratureConfig& cfg,
                          Exec policy = Exec::Parallel);

enum class EvalKind { Value, Derivative };

struct PointEvalEstimate {
    double lower_bound = 0.0;    // sup over the built-in test family of |f(z)| / ||f||
    double predicted_rate = 0.0; // point-evaluation growth rate at z
};

// Lower bound for the norm of the point-evaluation functional (or its
// derivative variant) together with the predicted asymptotic rate:
//   value kind:      (1-|z|^2)^-((alpha+2-p)/p)          subcritical
//                    log(2/(1-|z|^2))^((p-1)/p)          critical
//                    1                                   supercritical
//   derivative kind: (1-|z|^2)^-((alpha+2)/p)            all regimes
PointEvalEstimate point_eval_norm(DiskPoint z, const SpaceParams& sp, EvalKind kind,
                                  const QuadratureConfig& cfg);

// f_a test kernel normalized for D^p_alpha:
//   (1-|a|^2)^((alpha+2)/p) * (1 - conj(a) z)^-(2(alpha+2)/p - 1)
AnalyticFn peak_kernel(Complex a, const SpaceParams& sp);

}  // namespace diskvolt
