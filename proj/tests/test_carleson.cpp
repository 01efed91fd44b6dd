#include "doctest.h"

#include <cmath>

#include "diskvolt/carleson.hpp"
#include "support/oracles.hpp"

using namespace diskvolt;

namespace {

QuadratureConfig quick() {
    QuadratureConfig cfg;
    cfg.radial_levels = 32;
    return cfg;
}

}  // namespace

TEST_CASE("square measures") {
    const QuadratureConfig cfg = quick();
    SUBCASE("constant symbols induce the zero measure") {
        const auto mu = MeasureSpec::volterra(AnalyticFn::constant(Complex(4.0)), 2.0, 0.5);
        for (double h : {1.0, 0.25, 1.0 / 64}) {
            const auto [mass, err] = square_measure(mu, ArcInterval{0.7, h}, cfg);
            CHECK(mass == 0.0);
            CHECK(err == 0.0);
        }
    }
    SUBCASE("plain weight masses") {
        const auto [mass, err] = square_measure(MeasureSpec::plain_weight(0.0),
                                                ArcInterval{0.0, 0.5}, cfg);
        CHECK(mass == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    }
    SUBCASE("g = z against the exact radial integral") {
        for (auto [q, beta] : {std::pair{2.0, 0.0}, {1.0, 0.7}, {3.0, 1.5}}) {
            const auto mu = MeasureSpec::volterra(AnalyticFn::monomial(1), q, beta);
            const double h = 1.0 / 8.0;
            const auto [mass, err] = square_measure(mu, ArcInterval{2.2, h}, cfg);
            const double exact = h * std::pow(2.0 * h - h * h, beta + 1.0) / (beta + 1.0);
            CHECK(mass == doctest::Approx(exact).epsilon(1e-10));
        }
    }
    SUBCASE("parameter guards") {
        CHECK_THROWS_AS(MeasureSpec::volterra(AnalyticFn::monomial(1), 0.0, 0.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(MeasureSpec::volterra(AnalyticFn::monomial(1), 1.0, -1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(MeasureSpec::plain_weight(-1.2), std::invalid_argument);
    }
}

TEST_CASE("profiles of the plain weight") {
    const QuadratureConfig cfg = quick();
    const auto profile =
        carleson_profile(MeasureSpec::plain_weight(0.0), PowerGauge{2.0}, 10, cfg);
    REQUIRE(profile.levels.size() == 10);
    for (const auto& stat : profile.levels) {
        const double h = std::ldexp(1.0, -stat.level);
        CHECK(stat.sup == doctest::Approx(2.0 - h).epsilon(1e-8));
    }
    CHECK(profile.sup_overall == doctest::Approx(2.0 - std::ldexp(1.0, -10)).epsilon(1e-8));

    const auto bounded = classify_carleson(profile, CarlesonMode::BoundedConstant);
    const auto vanishing = classify_carleson(profile, CarlesonMode::Vanishing);
    CHECK(bounded.holds == Ternary::Holds);
    CHECK(vanishing.holds == Ternary::Fails);
}

TEST_CASE("zero measure profile is identically zero and holds in both modes") {
    const auto mu = MeasureSpec::volterra(AnalyticFn::constant(Complex(1.0)), 2.0, 0.0);
    const auto profile = carleson_profile(mu, PowerGauge{1.0}, 6, quick());
    for (const auto& stat : profile.levels) CHECK(stat.sup == 0.0);
    CHECK(classify_carleson(profile, CarlesonMode::BoundedConstant).holds == Ternary::Holds);
    CHECK(classify_carleson(profile, CarlesonMode::Vanishing).holds == Ternary::Holds);
}

TEST_CASE("gauge consistency around the critical exponent") {
    const double sigma = 0.5;
    const auto mu = MeasureSpec::plain_weight(sigma);
    const QuadratureConfig cfg = quick();
    // bounded iff s <= sigma+2, vanishing iff s < sigma+2
    const auto at = [&](double s) { return carleson_profile(mu, PowerGauge{s}, 10, cfg); };
    {
        const auto cls = classify_carleson(at(sigma + 1.5), CarlesonMode::BoundedConstant);
        CHECK(cls.holds == Ternary::Holds);
        CHECK(classify_carleson(at(sigma + 1.5), CarlesonMode::Vanishing).holds == Ternary::Holds);
    }
    {
        CHECK(classify_carleson(at(sigma + 2.0), CarlesonMode::BoundedConstant).holds ==
              Ternary::Holds);
        CHECK(classify_carleson(at(sigma + 2.0), CarlesonMode::Vanishing).holds == Ternary::Fails);
    }
    {
        CHECK(classify_carleson(at(sigma + 2.5), CarlesonMode::BoundedConstant).holds ==
              Ternary::Fails);
        CHECK(classify_carleson(at(sigma + 2.5), CarlesonMode::Vanishing).holds == Ternary::Fails);
    }
}

TEST_CASE("per-level sups are monotone in the gauge exponent") {
    const auto mu = MeasureSpec::plain_weight(0.0);
    const QuadratureConfig cfg = quick();
    const auto p1 = carleson_profile(mu, PowerGauge{1.0}, 6, cfg);
    const auto p2 = carleson_profile(mu, PowerGauge{2.0}, 6, cfg);
    // dividing by a smaller power of h < 1 gives smaller gauged values
    for (std::size_t i = 0; i < p1.levels.size(); ++i)
        CHECK(p1.levels[i].sup < p2.levels[i].sup);
}

TEST_CASE("rotation equivariance of the argmax") {
    const QuadratureConfig cfg = quick();
    const auto measure_at = [](double phi) {
        return MeasureSpec::volterra_from_derivative(
            AnalyticFn::power_kernel(std::polar(1.0, phi), 0.6), 2.0, 0.0);
    };
    const auto p0 = carleson_profile(measure_at(0.0), PowerGauge{1.0}, 8, cfg);

    SUBCASE("rotations on the dyadic grid leave the sup values unchanged") {
        const double phi = 2.0 * M_PI * (3.0 / 8.0);
        const auto pphi = carleson_profile(measure_at(phi), PowerGauge{1.0}, 8, cfg);
        for (std::size_t i = 0; i < p0.levels.size(); ++i) {
            if (p0.levels[i].level < 3) continue;  // grid aligns from level 3 on
            CHECK(pphi.levels[i].sup == doctest::Approx(p0.levels[i].sup).epsilon(1e-9));
            const double h = std::ldexp(1.0, -p0.levels[i].level);
            const double delta = std::remainder(
                pphi.levels[i].argmax_angle - p0.levels[i].argmax_angle - phi, 2.0 * M_PI);
            CHECK(std::abs(delta) <= 2.0 * M_PI * h + 1e-12);
        }
    }
    SUBCASE("generic rotations stay within the covering-family slack") {
        const double phi = 2.0 * M_PI / 3.0;
        const auto pphi = carleson_profile(measure_at(phi), PowerGauge{1.0}, 8, cfg);
        for (std::size_t i = 0; i < p0.levels.size(); ++i)
            CHECK(pphi.levels[i].sup == doctest::Approx(p0.levels[i].sup).epsilon(0.05));
    }
}

TEST_CASE("exponent recovery for boundary-singular derivatives") {
    // slope of the gauged sup equals (beta + 2 - c q) - s
    const double c = 0.5, q = 2.0, beta = 0.0, s = 1.0;
    const auto mu =
        MeasureSpec::volterra_from_derivative(AnalyticFn::power_kernel(Complex(1.0), c), q, beta);
    const auto profile = carleson_profile(mu, PowerGauge{s}, 10, quick());
    CHECK(profile.slope == doctest::Approx(beta + 2.0 - c * q - s).epsilon(0.1));
    // brute-force check of one square mass against the grid oracle
    const double h = 1.0 / 16.0;
    const auto [mass, err] = square_measure(mu, ArcInterval{0.0, h}, quick());
    const double ref = oracles::grid_integrate_square(
        [c, q, beta](Complex z) {
            return std::pow(1.0 - std::norm(z), beta) *
                   std::pow(std::abs(1.0 - z), -c * q);
        },
        0.0, h, 3000, 3000);
    CHECK(mass == doctest::Approx(ref).epsilon(5e-3));
}

TEST_CASE("total mass") {
    const QuadratureConfig cfg = quick();
    SUBCASE("g = z has mass 1/(beta+1)") {
        for (double beta : {0.0, 0.6, 2.0}) {
            const auto res = total_mass(MeasureSpec::volterra(AnalyticFn::monomial(1), 2.0, beta), cfg);
            CHECK(res.value == doctest::Approx(1.0 / (beta + 1.0)).epsilon(1e-9));
            CHECK(!res.diverged);
        }
    }
    SUBCASE("constants have zero mass") {
        const auto res = total_mass(MeasureSpec::volterra(AnalyticFn::constant(Complex(2.0)), 2.0, 0.0), cfg);
        CHECK(res.value == 0.0);
    }
    SUBCASE("strong singularities diverge when cq >= beta+2") {
        // g' = (1-z)^-c with c q = 2.4 >= beta + 2 = 2
        const auto res = total_mass(
            MeasureSpec::volterra_from_derivative(AnalyticFn::power_kernel(Complex(1.0), 1.2),
                                                  2.0, 0.0),
            cfg);
        CHECK(res.diverged);
    }
}

TEST_CASE("convergence assessment bands") {
    std::vector<double> decaying;
    std::vector<double> flat;
    std::vector<double> growing;
    for (int l = 0; l < 16; ++l) {
        decaying.push_back(std::pow(2.0, -0.5 * l));
        flat.push_back(1.0 + 0.001 * l);
        growing.push_back(std::pow(2.0, 0.3 * l));
    }
    CHECK(assess_convergence(decaying, false, 1.0).finite == Ternary::Holds);
    CHECK(assess_convergence(flat, true, 1.0).finite == Ternary::Inconclusive);
    CHECK(assess_convergence(growing, true, 1.0).finite == Ternary::Fails);
    CHECK(assess_convergence(std::vector<double>(16, 0.0), false, 1.0).finite == Ternary::Holds);
}
