#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "diskvolt/analytic.hpp"
#include "diskvolt/parallel.hpp"

namespace diskvolt {

// Point of the open unit disk.
struct DiskPoint {
    explicit DiskPoint(Complex value) : z(value) {
        if (!(std::abs(value) < 1.0))
            throw std::invalid_argument("DiskPoint: |z| must be < 1");
    }
    Complex z;
};

// Integrands receive the point z and v = 1 - |z|^2. v is the exact radial
// quadrature variable, so boundary weights (1-|z|^2)^a stay accurate at
// depths where recomputing 1 - |z|*|z| would cancel. Integrands are called
// from worker threads and must be pure and non-throwing; all sample points
// satisfy |z| < 1 strictly.
using Integrand = std::function<double(Complex z, double v)>;

struct QuadratureConfig {
    int radial_levels = 48;      // dyadic annuli 1-2^-l <= r < 1-2^-(l+1), plus closure
    int nodes_per_annulus = 16;  // Gauss-Legendre nodes in v per annulus
    int angular_nodes = 256;     // base uniform angular budget (multiple of 4)
    int panel_nodes = 8;         // Gauss-Legendre nodes per angular panel
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::vector<double> singular_angles;  // angular refinement hints

    void validate() const;
};

// Boundary arc. Lengths are normalized: the full circle has length 1.
struct ArcInterval {
    double center_angle = 0.0;
    double length = 1.0;  // in (0, 1]
};

// Carleson square over an arc: radial range [1 - |I|, 1).
struct CarlesonSquareRegion {
    explicit CarlesonSquareRegion(ArcInterval arc);
    ArcInterval interval;
    double inner_radius;  // 1 - interval.length
};

// Pseudo-hyperbolic disk Delta(a, r): the Moebius image of |w| < r under
// w -> (w + a) / (1 + conj(a) w), a Euclidean disk inside the unit disk.
struct PseudoDisk {
    PseudoDisk(DiskPoint center_point, double rho);
    DiskPoint center;
    double radius;  // pseudo-hyperbolic radius in (0, 1)
    Complex euclid_center;
    double euclid_radius;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool diverged = false;
    bool tolerance_ok = true;
    // Per dyadic annulus contribution, innermost first. The final sliver
    // beyond 1 - 2^-L is integrated too but reported separately so the
    // divergence detector sees only the dyadic trend.
    std::vector<double> level_profile;
    double boundary_sliver = 0.0;
};

// Integral against normalized area measure dA (total disk mass 1).
IntegralResult integrate_disk(const Integrand& f, const QuadratureConfig& cfg,
                              Exec policy = Exec::Parallel);

// Sector-annulus over an arbitrary arc and inner radius.
IntegralResult integrate_sector(const Integrand& f, ArcInterval arc, double inner_radius,
                                const QuadratureConfig& cfg, Exec policy = Exec::Parallel);

IntegralResult integrate_square(const Integrand& f, const CarlesonSquareRegion& square,
                                const QuadratureConfig& cfg, Exec policy = Exec::Parallel);

IntegralResult integrate_pseudo_disk(const Integrand& f, const PseudoDisk& disk,
                                     const QuadratureConfig& cfg, Exec policy = Exec::Parallel);

// Geometric decay exponent of the level profile: contributions behaving like
// 2^(-sigma * level) yield sigma. NaN when not estimable.
double decay_exponent(const std::vector<double>& level_profile);

}  // namespace diskvolt
