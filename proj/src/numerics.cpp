#include "diskvolt/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace diskvolt {

double stable_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    LineFit fit;
    if (xs.size() != ys.size() || xs.size() < 2) return fit;
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.n = n;
    return fit;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: n out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton on P_n starting from the Chebyshev-like estimate.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace diskvolt
