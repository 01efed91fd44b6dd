#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace diskvolt {

// Neumaier compensated summation in a fixed traversal order.
double stable_sum(std::span<const double> values);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares y = slope*x + intercept. Returns n = 0 when fewer
// than two distinct x values are supplied.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

// Gauss-Legendre nodes/weights on [-1, 1]. Cached per n; thread safe.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

}  // namespace diskvolt
