#include "doctest.h"

#include <cmath>
#include <random>

#include "diskvolt/operators.hpp"
#include "support/oracles.hpp"

using namespace diskvolt;

namespace {

QuadratureConfig quick_quad() {
    QuadratureConfig cfg;
    cfg.radial_levels = 32;
    return cfg;
}

CheckConfig quick_check() {
    CheckConfig cfg;
    cfg.quad = quick_quad();
    cfg.profile_levels = 10;
    return cfg;
}

double coeff_distance(const AnalyticFn& a, const AnalyticFn& b, int degree) {
    const auto ca = taylor_coeffs(a, degree);
    const auto cb = taylor_coeffs(b, degree);
    double worst = 0.0;
    for (int k = 0; k <= degree; ++k)
        worst = std::max(worst, std::abs(ca[static_cast<std::size_t>(k)] -
                                         cb[static_cast<std::size_t>(k)]));
    return worst;
}

}  // namespace

TEST_CASE("operator application") {
    SUBCASE("classical Volterra: Tg with g = z antidifferentiates") {
        const auto out = apply(OperatorKind::Tg, AnalyticFn::monomial(1),
                               AnalyticFn::constant(Complex(1.0)), 16);
        CHECK(coeff_distance(out, AnalyticFn::monomial(1), 17) == 0.0);
        std::mt19937 rng(17);
        const auto f = AnalyticFn::series(oracles::random_coeffs(rng, 24));
        CHECK(coeff_distance(apply(OperatorKind::Tg, AnalyticFn::monomial(1), f, 24),
                             antidifferentiate(f, 24), 25) == 0.0);
    }
    SUBCASE("Sg with g = 1 subtracts the value at zero") {
        std::mt19937 rng(19);
        const auto f = AnalyticFn::series(oracles::random_coeffs(rng, 20));
        const auto out = apply(OperatorKind::Sg, AnalyticFn::constant(Complex(1.0)), f, 20);
        auto expected = *f.series_coeffs();
        expected[0] = Complex(0.0);
        CHECK(coeff_distance(out, AnalyticFn::series(expected), 20) <= 1e-14);
    }
    SUBCASE("Tg and Sg vanish at the origin") {
        const auto g = AnalyticFn::power_kernel(Complex(1.0), 0.8);
        const auto f = AnalyticFn::log_kernel(Complex(1.0), 1);
        CHECK(std::abs(apply(OperatorKind::Tg, g, f, 64)(Complex(0.0))) == 0.0);
        CHECK(std::abs(apply(OperatorKind::Sg, g, f, 64)(Complex(0.0))) == 0.0);
    }
    SUBCASE("multiplier identity M_g f = f(0)g(0) + Tg f + Sg f") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = AnalyticFn::series(oracles::random_coeffs(rng, 32));
            const auto g = AnalyticFn::series(oracles::random_coeffs(rng, 32));
            const auto lhs = apply(OperatorKind::Mg, g, f, 64);
            const auto rhs = AnalyticFn::sum({AnalyticFn::constant(f(Complex(0.0)) * g(Complex(0.0))),
                                              apply(OperatorKind::Tg, g, f, 64),
                                              apply(OperatorKind::Sg, g, f, 64)});
            CHECK(coeff_distance(lhs, rhs, 64) <= 1e-12);
        }
    }
    SUBCASE("linearity") {
        std::mt19937 rng(29);
        const auto f1 = AnalyticFn::series(oracles::random_coeffs(rng, 16));
        const auto f2 = AnalyticFn::series(oracles::random_coeffs(rng, 16));
        const auto g = AnalyticFn::series(oracles::random_coeffs(rng, 16));
        for (OperatorKind kind : {OperatorKind::Tg, OperatorKind::Sg, OperatorKind::Mg}) {
            const auto joint = apply(kind, g, AnalyticFn::sum({f1, f2}), 32);
            const auto split =
                AnalyticFn::sum({apply(kind, g, f1, 32), apply(kind, g, f2, 32)});
            CHECK(coeff_distance(joint, split, 33) <= 1e-12);
        }
    }
}

TEST_CASE("test function factory") {
    const SpaceParams sp(2.0, 1.0);
    SUBCASE("peak kernel at the origin is the constant one") {
        const auto f = make_test_function(TestFunctionKind::PeakKernel, DiskPoint{Complex(0.0)}, sp);
        CHECK(std::abs(f(Complex(0.3, 0.4)) - Complex(1.0)) < 1e-14);
    }
    SUBCASE("zeroed variant vanishes at its center") {
        const DiskPoint a{Complex(0.6, 0.2)};
        const auto F = make_test_function(TestFunctionKind::PeakKernelZeroed, a, sp);
        CHECK(std::abs(F(a.z)) < 1e-12);
    }
    SUBCASE("derivative dual: value zero, derivative with the predicted magnitude") {
        const DiskPoint a{Complex(0.7)};
        const auto f = make_test_function(TestFunctionKind::DerivativeDual, a, sp);
        CHECK(std::abs(f(a.z)) < 1e-11);
        const double v = 1.0 - std::norm(a.z);
        const Complex expected = -std::conj(a.z) * std::pow(v, -(sp.alpha + 2.0) / sp.p);
        CHECK(std::abs(f.derivative()(a.z) - expected) <=
              1e-9 * std::abs(expected));
    }
    SUBCASE("log dual vanishes at its center") {
        const SpaceParams crit(2.0, 0.0);
        const DiskPoint a{Complex(0.8)};
        const auto f = make_test_function(TestFunctionKind::LogDual, a, crit);
        CHECK(std::abs(f(a.z)) < 1e-11);
    }
}

TEST_CASE("growth classification") {
    SUBCASE("bounded symbols") {
        const auto profile = classify_growth(AnalyticFn::monomial(1), 0.0);
        CHECK(profile.trend == GrowthTrend::BigOOnly);
        CHECK(profile.is_big_o());
        CHECK(!profile.is_little_o());
    }
    SUBCASE("power kernels around their own exponent") {
        const double gamma = 0.8;
        const auto g = AnalyticFn::power_kernel(Complex(1.0), gamma);
        CHECK(classify_growth(g, gamma).trend == GrowthTrend::BigOOnly);
        CHECK(classify_growth(g, gamma + 0.2).trend == GrowthTrend::LittleO);
        CHECK(classify_growth(g, gamma - 0.2).trend == GrowthTrend::Neither);
    }
    SUBCASE("zero symbol vanishes in every sense") {
        CHECK(classify_growth(AnalyticFn::zero(), 0.7).trend == GrowthTrend::LittleO);
    }
    SUBCASE("little-o implies big-O structurally") {
        const auto profile = classify_growth(AnalyticFn::power_kernel(Complex(1.0), 0.3), 0.6);
        CHECK(profile.is_little_o());
        CHECK(profile.is_big_o());
    }
}

TEST_CASE("boundedness criteria") {
    const CheckConfig cfg = quick_check();
    SUBCASE("hypothesis gate") {
        CHECK_THROWS_AS(check_bounded(OperatorKind::Tg, AnalyticFn::monomial(1),
                                      SpaceParams(2.0, 0.0), SpaceParams(1.0, 0.0), cfg),
                        HypothesisViolation);
    }
    SUBCASE("Tg in the supercritical regime reduces to finite mass") {
        const auto v = check_bounded(OperatorKind::Tg, AnalyticFn::monomial(1),
                                     SpaceParams(3.0, 0.0), SpaceParams(4.0, 0.0), cfg);
        CHECK(v.holds == Ternary::Holds);
        CHECK(v.criterion == "finite-mass");
    }
    SUBCASE("constant symbols are bounded in every regime") {
        for (auto [p, alpha] : {std::pair{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}) {
            const auto v = check_bounded(OperatorKind::Tg, AnalyticFn::constant(Complex(3.0)),
                                         SpaceParams(p, alpha), SpaceParams(4.0, 0.0), cfg);
            CHECK(v.holds == Ternary::Holds);
        }
    }
    SUBCASE("Sg threshold at the growth exponent") {
        const SpaceParams in(2.0, 0.0), out(4.0, 0.0);  // t* = 1/2
        const auto holds = check_bounded(OperatorKind::Sg,
                                         AnalyticFn::power_kernel(Complex(1.0), 0.4), in, out, cfg);
        const auto fails = check_bounded(OperatorKind::Sg,
                                         AnalyticFn::power_kernel(Complex(1.0), 0.6), in, out, cfg);
        CHECK(holds.holds == Ternary::Holds);
        CHECK(fails.holds == Ternary::Fails);
        CHECK(holds.threshold->predicted == doctest::Approx(0.5));
    }
    SUBCASE("Mg is the conjunction of the measure and growth conditions") {
        const SpaceParams in(2.0, 0.0), out(4.0, 0.0);
        const auto v = check_bounded(OperatorKind::Mg,
                                     AnalyticFn::power_kernel(Complex(1.0), 0.6), in, out, cfg);
        CHECK(v.holds == Ternary::Fails);
        CHECK(v.criterion.find("&&") != std::string::npos);
        const auto ok = check_bounded(OperatorKind::Mg, AnalyticFn::monomial(2), in, out, cfg);
        CHECK(ok.holds == Ternary::Holds);
        // structurally: Mg verdict == Tg-style condition AND Sg growth condition
        for (const auto& g : {AnalyticFn::monomial(2),
                              AnalyticFn::power_kernel(Complex(1.0), 0.3),
                              AnalyticFn::power_kernel(Complex(1.0), 0.8)}) {
            const auto mg = check_bounded(OperatorKind::Mg, g, in, out, cfg);
            const auto tg = check_bounded(OperatorKind::Tg, g, in, out, cfg);
            const auto sg = check_bounded(OperatorKind::Sg, g, in, out, cfg);
            CHECK(mg.holds == ternary_and(tg.holds, sg.holds));
        }
    }
}

TEST_CASE("critical regime log-gauge criteria") {
    const CheckConfig cfg = quick_check();
    const SpaceParams in(2.0, 0.0), out(4.0, 0.0);  // p = alpha + 2
    SUBCASE("bounded symbols satisfy the log bound") {
        const auto b = check_bounded(OperatorKind::Tg, AnalyticFn::monomial(1), in, out, cfg);
        CHECK(b.holds == Ternary::Holds);
        CHECK(b.criterion == "carleson:log");
        const auto c = check_compact(OperatorKind::Tg, AnalyticFn::monomial(1), in, out, cfg);
        CHECK(c.holds == Ternary::Holds);
        CHECK(c.criterion == "carleson:log-vanishing");
    }
    SUBCASE("strong singularities overwhelm the log gauge") {
        // g' = (1-z)^(-3/4): square masses ~ h^(-1), growing against log^2
        const auto mu = MeasureSpec::volterra_from_derivative(
            AnalyticFn::power_kernel(Complex(1.0), 0.75), out.p, out.alpha);
        const auto profile = carleson_profile(mu, LogGauge{(1.0 / in.p - 1.0) * out.p},
                                              cfg.profile_levels, cfg.quad);
        CHECK(classify_carleson(profile, CarlesonMode::BoundedConstant).holds == Ternary::Fails);
        CHECK(classify_carleson(profile, CarlesonMode::Vanishing).holds == Ternary::Fails);
    }
    SUBCASE("critical order-bounded integrals") {
        const auto tg = check_order_bounded(OperatorKind::Tg, AnalyticFn::monomial(1), in, out, cfg);
        CHECK(tg.holds == Ternary::Holds);
        CHECK(tg.criterion == "integral:derivative-log-weight");
        // Mg needs the symbol integral with weight v^(beta - q) too
        const auto mg_bad = check_order_bounded(OperatorKind::Mg, AnalyticFn::monomial(1), in, out, cfg);
        CHECK(mg_bad.holds == Ternary::Fails);  // beta - q = -4
        const auto mg_ok = check_order_bounded(OperatorKind::Mg, AnalyticFn::monomial(1), in,
                                               SpaceParams(4.0, 3.5), cfg);
        CHECK(mg_ok.holds == Ternary::Holds);  // beta - q = -0.5
    }
}

TEST_CASE("compactness criteria") {
    const CheckConfig cfg = quick_check();
    SUBCASE("the zero symbol is compact") {
        const auto v = check_compact(OperatorKind::Sg, AnalyticFn::zero(), SpaceParams(2.0, 0.0),
                                     SpaceParams(4.0, 0.0), cfg);
        CHECK(v.holds == Ternary::Holds);
    }
    SUBCASE("boundary case: bounded holds, compact fails") {
        const SpaceParams in(2.0, 0.0), out(4.0, 0.0);  // t* = 1/2
        const auto g = AnalyticFn::power_kernel(Complex(1.0), 0.5);
        CHECK(check_bounded(OperatorKind::Sg, g, in, out, cfg).holds == Ternary::Holds);
        CHECK(check_compact(OperatorKind::Sg, g, in, out, cfg).holds == Ternary::Fails);
    }
    SUBCASE("supercritical Tg: compact shares the bounded criterion") {
        const SpaceParams in(3.0, 0.0), out(4.0, 0.0);
        for (const auto& g : {AnalyticFn::monomial(1),
                              AnalyticFn::power_kernel(Complex(1.0), -0.75),
                              AnalyticFn::power_kernel(Complex(1.0), 0.5)}) {
            const auto b = check_bounded(OperatorKind::Tg, g, in, out, cfg);
            const auto c = check_compact(OperatorKind::Tg, g, in, out, cfg);
            CHECK(b.holds == c.holds);
            CHECK(b.criterion == c.criterion);
        }
    }
}

TEST_CASE("order boundedness") {
    const CheckConfig cfg = quick_check();
    SUBCASE("no p < q hypothesis is needed") {
        CHECK_NOTHROW(check_order_bounded(OperatorKind::Sg, AnalyticFn::monomial(1),
                                          SpaceParams(2.0, 0.0), SpaceParams(1.0, 0.0), cfg));
    }
    SUBCASE("Tg subcritical threshold for g = z") {
        //   integral (1-|z|^2)^(beta - q(alpha+2-p)/p) dA finite iff exponent > -1
        const SpaceParams in(1.0, 0.0);
        const auto holds = check_order_bounded(OperatorKind::Tg, AnalyticFn::monomial(1), in,
                                               SpaceParams(0.8, 0.2), cfg);
        CHECK(holds.holds == Ternary::Holds);  // 0.2 - 0.8 = -0.6 > -1
        const auto fails = check_order_bounded(OperatorKind::Tg, AnalyticFn::monomial(1), in,
                                               SpaceParams(1.5, 0.2), cfg);
        CHECK(fails.holds == Ternary::Fails);  // 0.2 - 1.5 = -1.3 < -1
    }
    SUBCASE("the zero symbol is order bounded") {
        const auto v = check_order_bounded(OperatorKind::Sg, AnalyticFn::zero(),
                                           SpaceParams(2.0, 0.0), SpaceParams(2.0, 0.0), cfg);
        CHECK(v.holds == Ternary::Holds);
    }
    SUBCASE("subcritical cross-check: Sg order bounded iff weighted Bergman mass finite") {
        const SpaceParams in(2.0, 0.5), out(1.0, 0.8);  // lambda = 0.8 - 1.25 = -0.45 > -1
        for (double gamma : {0.5, 1.0, 1.8, 2.5}) {
            const auto g = AnalyticFn::power_kernel(Complex(1.0), gamma);
            const auto sg = check_order_bounded(OperatorKind::Sg, g, in, out, cfg);
            // lambda + 2 = 1.55; finite iff gamma * q < 1.55
            const Ternary expected = gamma * out.p < 1.55 - 0.05 ? Ternary::Holds
                                     : gamma * out.p > 1.55 + 0.05 ? Ternary::Fails
                                                                   : Ternary::Inconclusive;
            CHECK(sg.holds == expected);
        }
    }
}

TEST_CASE("operator norm lower bounds") {
    CheckConfig cfg = quick_check();
    cfg.series_degree = 1024;
    const SpaceParams sp(2.0, 0.0);
    SUBCASE("Sg with g = 1 reaches its unit norm on f = z") {
        const double bound = opnorm_lower_bound(OperatorKind::Sg, AnalyticFn::constant(Complex(1.0)),
                                                sp, sp, {AnalyticFn::monomial(1)}, cfg);
        CHECK(bound >= 0.9);
        CHECK(bound <= 1.0 + 1e-6);
    }
    SUBCASE("the zero symbol gives zero") {
        CHECK(opnorm_lower_bound(OperatorKind::Sg, AnalyticFn::zero(), sp, sp,
                                 {AnalyticFn::monomial(1)}, cfg) == 0.0);
    }
    SUBCASE("unbounded symbols blow up along the peak kernel family") {
        const SpaceParams in(2.0, 0.0), out(4.0, 0.0);  // t* = 1/2
        const auto g = AnalyticFn::power_kernel(Complex(1.0), 0.9);
        double prev = 0.0;
        for (int k = 1; k <= 4; ++k) {
            const double a = 1.0 - std::ldexp(1.0, -k);
            const double bound =
                opnorm_lower_bound(OperatorKind::Sg, g, in, out, {peak_kernel(Complex(a), in)}, cfg);
            CHECK(bound > prev);
            prev = bound;
        }
        CHECK(prev > 1.0);
    }
    SUBCASE("empty families are rejected") {
        CHECK_THROWS_AS(opnorm_lower_bound(OperatorKind::Sg, AnalyticFn::zero(), sp, sp, {}, cfg),
                        std::invalid_argument);
    }
}

TEST_CASE("equivalence audits") {
    const CheckConfig cfg = quick_check();
    SUBCASE("supercritical chain for well-behaved symbols") {
        const SpaceParams in(3.0, 0.0), out(4.0, 0.0);
        for (const auto& g : {AnalyticFn::monomial(1),
                              AnalyticFn::power_kernel(Complex(1.0), -0.75),
                              AnalyticFn::constant(Complex(2.0))}) {
            const auto report = equivalence_audit(g, in, out, cfg);
            CHECK(report.chain == AuditChain::SupercriticalVolterra);
            CHECK(report.consistent());
        }
    }
    SUBCASE("supercritical chain for a divergent symbol") {
        const SpaceParams in(3.0, 0.0), out(4.0, 0.0);
        const auto report =
            equivalence_audit(AnalyticFn::power_kernel(Complex(1.0), 0.5), in, out, cfg);
        CHECK(report.consistent());
        CHECK(report.entries.front().verdict == Ternary::Fails);
    }
    SUBCASE("subcritical order-bounded chain") {
        const SpaceParams in(2.0, 0.5), out(1.0, 0.8);
        for (const auto& g : {AnalyticFn::power_kernel(Complex(1.0), 0.8),
                              AnalyticFn::power_kernel(Complex(1.0), 2.5),
                              AnalyticFn::log_kernel(Complex(1.0), 1)}) {
            const auto report = equivalence_audit(g, in, out, cfg);
            CHECK(report.chain == AuditChain::SubcriticalOrderBounded);
            CHECK(report.consistent());
        }
    }
    SUBCASE("critical parameters match neither chain") {
        CHECK_THROWS_AS(equivalence_audit(AnalyticFn::monomial(1), SpaceParams(2.0, 0.0),
                                          SpaceParams(4.0, 0.0), cfg),
                        HypothesisViolation);
    }
}

TEST_CASE("pseudo-hyperbolic local mean dominates the point value") {
    // |g(a)|^q * (inradius at a)^2 <= integral of |g|^q over Delta(a, 1/2),
    // the subharmonicity step behind the growth criteria
    const QuadratureConfig quad = quick_quad();
    const double q = 2.0;
    const auto g = AnalyticFn::power_kernel(Complex(1.0), 0.3);
    for (double a : {0.5, 0.8, 0.9}) {
        const PseudoDisk disk{DiskPoint{Complex(a)}, 0.5};
        QuadratureConfig hinted = quad;
        hinted.singular_angles = g.singular_angles();
        const auto mean = integrate_pseudo_disk(
            [&g, q](Complex z, double) { return std::pow(std::abs(g(z)), q); }, disk, hinted);
        const double inradius = disk.euclid_radius - std::abs(Complex(a) - disk.euclid_center);
        REQUIRE(inradius > 0.0);
        CHECK(std::pow(std::abs(g(Complex(a))), q) * inradius * inradius <=
              mean.value * (1.0 + 1e-9));
    }
}

TEST_CASE("verdict monotonicity in the singularity strength") {
    const CheckConfig cfg = quick_check();
    const SpaceParams in(2.0, 0.0), out(4.0, 0.0);
    // once a verdict fails it must not come back to holds at stronger gamma
    for (CheckMode mode : {CheckMode::Bounded, CheckMode::Compact}) {
        bool seen_fails = false;
        for (double gamma = 0.2; gamma <= 0.85; gamma += 0.1) {
            const auto g = AnalyticFn::power_kernel(Complex(1.0), gamma);
            const auto v = mode == CheckMode::Bounded
                               ? check_bounded(OperatorKind::Sg, g, in, out, cfg)
                               : check_compact(OperatorKind::Sg, g, in, out, cfg);
            if (v.holds == Ternary::Fails) seen_fails = true;
            if (seen_fails) CHECK(v.holds != Ternary::Holds);
        }
    }
}
