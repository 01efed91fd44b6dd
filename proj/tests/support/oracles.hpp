#pragma once

// Test-only oracles, independent of the library's integration and series
// machinery: special-function identities, brute-force grid quadrature and
// finite differences.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;

inline double beta_fn(double x, double y) {
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

// Binomial-series coefficient Gamma(gamma+k) / (Gamma(gamma) k!) for gamma > 0.
inline double binomial_series_coeff(double gamma, int k) {
    return std::exp(std::lgamma(gamma + k) - std::lgamma(gamma) - std::lgamma(k + 1.0));
}

// Midpoint polar-grid integral of F against normalized area measure.
inline double grid_integrate_disk(const std::function<double(Complex)>& f, int nr = 2000,
                                  int nt = 2000) {
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) / nr;
        double row = 0.0;
        for (int j = 0; j < nt; ++j) {
            const double t = 2.0 * M_PI * (j + 0.5) / nt;
            row += f(std::polar(r, t));
        }
        acc += row * r;
    }
    return acc * 2.0 / (static_cast<double>(nr) * nt);
}

// Same for the Carleson square over [center - pi h, center + pi h] x [1-h, 1).
inline double grid_integrate_square(const std::function<double(Complex)>& f, double center,
                                    double h, int nr = 2000, int nt = 2000) {
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = (1.0 - h) + h * (i + 0.5) / nr;
        double row = 0.0;
        for (int j = 0; j < nt; ++j) {
            const double t = center + 2.0 * M_PI * h * ((j + 0.5) / nt - 0.5);
            row += f(std::polar(r, t));
        }
        acc += row * r;
    }
    return acc * 2.0 * h * h / (static_cast<double>(nr) * nt);
}

// Central finite difference along the real direction; exact for analytic f.
inline Complex central_difference(const std::function<Complex(Complex)>& f, Complex z,
                                  double step = 1e-5) {
    return (f(z + step) - f(z - step)) / (2.0 * step);
}

inline std::vector<Complex> random_coeffs(std::mt19937& rng, int degree) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Complex> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) coeffs.emplace_back(uni(rng), uni(rng));
    return coeffs;
}

}  // namespace oracles
