#pragma once

#include <complex>
#include <memory>
#include <variant>
#include <vector>

#include "diskvolt/errors.hpp"

namespace diskvolt {

using Complex = std::complex<double>;

class AnalyticFn;

// Closed under addition, multiplication and exact differentiation:
//   Series       a_0 + a_1 z + ... + a_N z^N
//   PowerKernel  scale * (1 - conj(base) z)^(-exponent)
//   LogKernel    scale * log(2 / (1 - conj(base) z))^power
//   Sum/Product  finite combinations of the above
struct SeriesNode {
    std::vector<Complex> coeffs;  // degree = coeffs.size() - 1
};
struct PowerKernelNode {
    Complex base;
    double exponent;
    Complex scale;
};
struct LogKernelNode {
    Complex base;
    int power;  // positive integer
    Complex scale;
};
struct SumNode {
    std::vector<AnalyticFn> terms;
};
struct ProductNode {
    std::vector<AnalyticFn> factors;
};

using AnalyticNode =
    std::variant<SeriesNode, PowerKernelNode, LogKernelNode, SumNode, ProductNode>;

// Immutable analytic function on the unit disk. Copies share the node tree;
// all operations are pure, so concurrent evaluation is safe.
class AnalyticFn {
public:
    static AnalyticFn series(std::vector<Complex> coeffs);
    static AnalyticFn constant(Complex c);
    static AnalyticFn zero();
    static AnalyticFn monomial(int n, Complex c = Complex(1.0));
    // |base| <= 1 required; base = 0 degenerates to the constant `scale`.
    static AnalyticFn power_kernel(Complex base, double exponent, Complex scale = Complex(1.0));
    static AnalyticFn log_kernel(Complex base, int power, Complex scale = Complex(1.0));
    static AnalyticFn sum(std::vector<AnalyticFn> terms);
    static AnalyticFn product(std::vector<AnalyticFn> factors);

    // Evaluation at |z| < 1 (Series tolerates |z| <= 1; kernels throw
    // PoleOnPath when the denominator vanishes, only possible at |z| = 1
    // with |base| = 1).
    Complex operator()(Complex z) const;

    // Exact symbolic derivative.
    AnalyticFn derivative() const;

    bool is_series() const;
    // Null when the function is not a plain Series.
    const std::vector<Complex>* series_coeffs() const;

    // Boundary angles where the function concentrates (kernel bases with
    // |base| >= hint threshold). Used as quadrature refinement hints.
    std::vector<double> singular_angles() const;

    const AnalyticNode& node() const { return *node_; }

private:
    explicit AnalyticFn(AnalyticNode n);
    std::shared_ptr<const AnalyticNode> node_;
};

inline Complex eval(const AnalyticFn& f, Complex z) { return f(z); }
inline AnalyticFn differentiate(const AnalyticFn& f) { return f.derivative(); }

inline constexpr int kDefaultSeriesDegree = 512;
inline constexpr int kMaxSeriesDegree = 1 << 15;

// Taylor coefficients a_0..a_degree. PowerKernel coefficients follow the
// binomial series Gamma(gamma+k) / (Gamma(gamma) k!) * conj(base)^k.
std::vector<Complex> taylor_coeffs(const AnalyticFn& f, int degree);

struct TruncationInfo {
    double tail_bound = 0.0;  // estimated sup over |z| <= radius of the dropped tail
    double radius = 0.0;
    bool slow_decay = false;  // tail bound exceeded the requested tolerance
};

struct TruncatedSeries {
    AnalyticFn fn;  // Series of the requested degree
    TruncationInfo info;
};

TruncatedSeries truncate(const AnalyticFn& f, int degree, double tail_radius = 0.99,
                         double tail_tol = 1e-9);

// Antiderivative F with F(0) = 0 and F' = f at the truncated degree.
// Closed forms are truncated to Series of `degree` first.
AnalyticFn antidifferentiate(const AnalyticFn& f, int degree = kDefaultSeriesDegree);

// Cauchy product truncated to `degree`.
AnalyticFn multiply(const AnalyticFn& f, const AnalyticFn& g, int degree);

}  // namespace diskvolt
