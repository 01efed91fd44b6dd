// Benchmark of the parallel kernels against the serial reference path.
// Both paths reduce in a fixed order, so the checksum column must match
// bit for bit.

#include <chrono>
#include <cstdio>

#include "diskvolt/carleson.hpp"
#include "diskvolt/quadrature.hpp"

using namespace diskvolt;

namespace {

template <typename F>
double timed(const F& fn, int reps, double& checksum) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) checksum = fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / reps;
}

}  // namespace

int main() {
    QuadratureConfig cfg;
    cfg.singular_angles = {0.0};
    const auto mu = MeasureSpec::volterra_from_derivative(
        AnalyticFn::power_kernel(Complex(1.0), 0.6), 2.0, 0.0);
    const Integrand density = mu.integrand();

    std::printf("threads: %d\n", max_threads());
    std::printf("%-28s %12s %12s %8s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
                "bitwise");

    {
        double cs_s = 0.0, cs_p = 0.0;
        const double ts = timed(
            [&] { return integrate_disk(density, cfg, Exec::Serial).value; }, 5, cs_s);
        const double tp = timed(
            [&] { return integrate_disk(density, cfg, Exec::Parallel).value; }, 5, cs_p);
        std::printf("%-28s %12.4f %12.4f %8.2f %s\n", "integrate_disk", ts, tp, ts / tp,
                    cs_s == cs_p ? "ok" : "MISMATCH");
    }

    {
        double cs_s = 0.0, cs_p = 0.0;
        auto run = [&](Exec policy) {
            return carleson_profile(mu, PowerGauge{1.0}, 8, cfg, policy).sup_overall;
        };
        const double ts = timed([&] { return run(Exec::Serial); }, 2, cs_s);
        const double tp = timed([&] { return run(Exec::Parallel); }, 2, cs_p);
        std::printf("%-28s %12.4f %12.4f %8.2f %s\n", "carleson_profile", ts, tp, ts / tp,
                    cs_s == cs_p ? "ok" : "MISMATCH");
    }

    return 0;
}
