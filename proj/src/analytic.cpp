#include "diskvolt/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace diskvolt {

namespace {

constexpr double kHintBaseThreshold = 0.25;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

// Integer power by repeated multiplication; exact for the small exponents
// LogKernel uses.
Complex ipow(Complex w, int m) {
    Complex out(1.0);
    for (int i = 0; i < m; ++i) out *= w;
    return out;
}

std::vector<Complex> cauchy(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, Complex(0.0));
    const int na = static_cast<int>(a.size());
    for (int j = 0; j < na && j <= degree; ++j) {
        if (a[j] == Complex(0.0)) continue;
        const int kmax = std::min<int>(degree - j, static_cast<int>(b.size()) - 1);
        for (int k = 0; k <= kmax; ++k) c[j + k] += a[j] * b[k];
    }
    return c;
}

}  // namespace

AnalyticFn::AnalyticFn(AnalyticNode n) : node_(std::make_shared<const AnalyticNode>(std::move(n))) {}

AnalyticFn AnalyticFn::series(std::vector<Complex> coeffs) {
    require(!coeffs.empty(), "series: at least one coefficient required");
    for (Complex c : coeffs) require(finite(c), "series: coefficients must be finite");
    return AnalyticFn(SeriesNode{std::move(coeffs)});
}

AnalyticFn AnalyticFn::constant(Complex c) { return series({c}); }

AnalyticFn AnalyticFn::zero() { return constant(Complex(0.0)); }

AnalyticFn AnalyticFn::monomial(int n, Complex c) {
    require(n >= 0, "monomial: exponent must be >= 0");
    std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1, Complex(0.0));
    coeffs.back() = c;
    return series(std::move(coeffs));
}

AnalyticFn AnalyticFn::power_kernel(Complex base, double exponent, Complex scale) {
    require(std::abs(base) <= 1.0 + 1e-12, "power_kernel: |base| must be <= 1");
    require(std::isfinite(exponent) && finite(scale), "power_kernel: finite parameters required");
    return AnalyticFn(PowerKernelNode{base, exponent, scale});
}

AnalyticFn AnalyticFn::log_kernel(Complex base, int power, Complex scale) {
    require(std::abs(base) <= 1.0 + 1e-12, "log_kernel: |base| must be <= 1");
    require(power >= 1, "log_kernel: power must be a positive integer");
    require(finite(scale), "log_kernel: finite scale required");
    return AnalyticFn(LogKernelNode{base, power, scale});
}

AnalyticFn AnalyticFn::sum(std::vector<AnalyticFn> terms) {
    require(!terms.empty(), "sum: at least one term required");
    if (terms.size() == 1) return terms.front();
    return AnalyticFn(SumNode{std::move(terms)});
}

AnalyticFn AnalyticFn::product(std::vector<AnalyticFn> factors) {
    require(!factors.empty(), "product: at least one factor required");
    if (factors.size() == 1) return factors.front();
    return AnalyticFn(ProductNode{std::move(factors)});
}

Complex AnalyticFn::operator()(Complex z) const {
    struct Visitor {
        Complex z;
        Complex operator()(const SeriesNode& s) const {
            Complex acc(0.0);
            for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) acc = acc * z + *it;
            return acc;
        }
        Complex operator()(const PowerKernelNode& k) const {
            const Complex w = Complex(1.0) - std::conj(k.base) * z;
            if (w == Complex(0.0))
                throw PoleOnPath("power kernel pole at z on the boundary");
            return k.scale * std::pow(w, -k.exponent);
        }
        Complex operator()(const LogKernelNode& k) const {
            const Complex w = Complex(1.0) - std::conj(k.base) * z;
            if (w == Complex(0.0))
                throw PoleOnPath("log kernel pole at z on the boundary");
            return k.scale * ipow(std::log(Complex(2.0) / w), k.power);
        }
        Complex operator()(const SumNode& s) const {
            Complex acc(0.0);
            for (const auto& t : s.terms) acc += t(z);
            return acc;
        }
        Complex operator()(const ProductNode& p) const {
            Complex acc(1.0);
            for (const auto& f : p.factors) acc *= f(z);
            return acc;
        }
    };
    return std::visit(Visitor{z}, *node_);
}

AnalyticFn AnalyticFn::derivative() const {
    struct Visitor {
        AnalyticFn operator()(const SeriesNode& s) const {
            if (s.coeffs.size() == 1) return AnalyticFn::zero();
            std::vector<Complex> d(s.coeffs.size() - 1);
            for (std::size_t k = 0; k + 1 < s.coeffs.size(); ++k)
                d[k] = static_cast<double>(k + 1) * s.coeffs[k + 1];
            return AnalyticFn::series(std::move(d));
        }
        AnalyticFn operator()(const PowerKernelNode& k) const {
            if (k.exponent == 0.0 || k.base == Complex(0.0)) return AnalyticFn::zero();
            return AnalyticFn::power_kernel(k.base, k.exponent + 1.0,
                                            k.scale * k.exponent * std::conj(k.base));
        }
        AnalyticFn operator()(const LogKernelNode& k) const {
            if (k.base == Complex(0.0)) return AnalyticFn::zero();
            const Complex scale = k.scale * static_cast<double>(k.power) * std::conj(k.base);
            if (k.power == 1) return AnalyticFn::power_kernel(k.base, 1.0, scale);
            return AnalyticFn::product(
                {AnalyticFn::log_kernel(k.base, k.power - 1, scale),
                 AnalyticFn::power_kernel(k.base, 1.0)});
        }
        AnalyticFn operator()(const SumNode& s) const {
            std::vector<AnalyticFn> terms;
            terms.reserve(s.terms.size());
            for (const auto& t : s.terms) terms.push_back(t.derivative());
            return AnalyticFn::sum(std::move(terms));
        }
        AnalyticFn operator()(const ProductNode& p) const {
            std::vector<AnalyticFn> terms;
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
                std::vector<AnalyticFn> factors = p.factors;
                factors[i] = factors[i].derivative();
                if (const auto* s = factors[i].series_coeffs();
                    s && s->size() == 1 && (*s)[0] == Complex(0.0))
                    continue;  // product rule term vanishes
                terms.push_back(AnalyticFn::product(std::move(factors)));
            }
            if (terms.empty()) return AnalyticFn::zero();
            return AnalyticFn::sum(std::move(terms));
        }
    };
    return std::visit(Visitor{}, *node_);
}

bool AnalyticFn::is_series() const { return std::holds_alternative<SeriesNode>(*node_); }

const std::vector<Complex>* AnalyticFn::series_coeffs() const {
    if (const auto* s = std::get_if<SeriesNode>(node_.get())) return &s->coeffs;
    return nullptr;
}

std::vector<double> AnalyticFn::singular_angles() const {
    std::vector<double> angles;
    struct Visitor {
        std::vector<double>& out;
        void add(Complex base) const {
            if (std::abs(base) >= kHintBaseThreshold) out.push_back(std::arg(base));
        }
        void operator()(const SeriesNode&) const {}
        void operator()(const PowerKernelNode& k) const { add(k.base); }
        void operator()(const LogKernelNode& k) const { add(k.base); }
        void operator()(const SumNode& s) const {
            for (const auto& t : s.terms)
                for (double a : t.singular_angles()) out.push_back(a);
        }
        void operator()(const ProductNode& p) const {
            for (const auto& f : p.factors)
                for (double a : f.singular_angles()) out.push_back(a);
        }
    };
    std::visit(Visitor{angles}, *node_);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 angles.end());
    return angles;
}

// ---------------------------------------------------------------------------
// Taylor coefficients and truncation
// ---------------------------------------------------------------------------

namespace {

std::vector<Complex> power_kernel_coeffs(const PowerKernelNode& k, int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, Complex(0.0));
    c[0] = k.scale;
    const Complex ab = std::conj(k.base);
    Complex cur = k.scale;
    for (int j = 0; j < degree; ++j) {
        cur *= ab * ((k.exponent + j) / (j + 1.0));
        c[static_cast<std::size_t>(j) + 1] = cur;
        if (cur == Complex(0.0)) break;  // polynomial case: exponent a nonpositive integer
    }
    return c;
}

std::vector<Complex> log_kernel_coeffs(const LogKernelNode& k, int degree) {
    // log(2/(1 - conj(a) z)) = log 2 + sum_{j>=1} conj(a)^j z^j / j
    std::vector<Complex> base(static_cast<std::size_t>(degree) + 1, Complex(0.0));
    base[0] = std::log(2.0);
    const Complex ab = std::conj(k.base);
    Complex p(1.0);
    for (int j = 1; j <= degree; ++j) {
        p *= ab;
        base[static_cast<std::size_t>(j)] = p / static_cast<double>(j);
    }
    std::vector<Complex> acc = base;
    for (int m = 1; m < k.power; ++m) acc = cauchy(acc, base, degree);
    for (auto& c : acc) c *= k.scale;
    return acc;
}

}  // namespace

std::vector<Complex> taylor_coeffs(const AnalyticFn& f, int degree) {
    require(degree >= 0, "taylor_coeffs: degree must be >= 0");
    struct Visitor {
        int degree;
        std::vector<Complex> operator()(const SeriesNode& s) const {
            std::vector<Complex> c = s.coeffs;
            c.resize(static_cast<std::size_t>(degree) + 1, Complex(0.0));
            return c;
        }
        std::vector<Complex> operator()(const PowerKernelNode& k) const {
            return power_kernel_coeffs(k, degree);
        }
        std::vector<Complex> operator()(const LogKernelNode& k) const {
            return log_kernel_coeffs(k, degree);
        }
        std::vector<Complex> operator()(const SumNode& s) const {
            std::vector<Complex> acc(static_cast<std::size_t>(degree) + 1, Complex(0.0));
            for (const auto& t : s.terms) {
                auto c = taylor_coeffs(t, degree);
                for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c[j];
            }
            return acc;
        }
        std::vector<Complex> operator()(const ProductNode& p) const {
            auto acc = taylor_coeffs(p.factors.front(), degree);
            for (std::size_t i = 1; i < p.factors.size(); ++i)
                acc = cauchy(acc, taylor_coeffs(p.factors[i], degree), degree);
            return acc;
        }
    };
    return std::visit(Visitor{degree}, f.node());
}

namespace {

// sup_{|z| <= r} |dropped tail| estimated from extended coefficients plus a
// geometric cap on the remainder.
double tail_estimate(const AnalyticFn& f, int degree, double r) {
    struct Visitor {
        const AnalyticFn& f;
        int degree;
        double r;
        double operator()(const SeriesNode& s) const {
            double acc = 0.0;
            double rk = std::pow(r, degree + 1);
            for (std::size_t k = static_cast<std::size_t>(degree) + 1; k < s.coeffs.size(); ++k) {
                acc += std::abs(s.coeffs[k]) * rk;
                rk *= r;
            }
            return acc;
        }
        double operator()(const PowerKernelNode& k) const {
            if (k.base == Complex(0.0) || k.exponent == 0.0) return 0.0;
            const double ab = std::abs(k.base) * r;
            // walk the recurrence past the truncation point
            double mag = std::abs(k.scale);
            for (int j = 0; j <= degree; ++j) mag *= ab * std::abs((k.exponent + j) / (j + 1.0));
            double acc = 0.0;
            double term = mag;  // |c_{degree+1}| r^{degree+1}
            int j = degree + 1;
            for (int steps = 0; steps < 4096; ++steps, ++j) {
                acc += term;
                const double ratio = ab * std::abs((k.exponent + j) / (j + 1.0));
                if (ratio >= 1.0 - 1e-9) return acc + term * 1e9;  // effectively no decay
                term *= ratio;
                if (term < 1e-18 * (acc + 1e-300)) break;
            }
            const double ratio = ab * std::abs((k.exponent + j) / (j + 1.0));
            if (ratio < 1.0) acc += term * ratio / (1.0 - ratio);
            return acc;
        }
        double operator()(const LogKernelNode& k) const {
            const int ext = std::min(degree + 2048, kMaxSeriesDegree + 4096);
            auto c = log_kernel_coeffs(k, ext);
            double acc = 0.0;
            double rk = std::pow(r, degree + 1);
            for (int j = degree + 1; j <= ext; ++j) {
                acc += std::abs(c[static_cast<std::size_t>(j)]) * rk;
                rk *= r;
            }
            const double ratio = std::abs(k.base) * r;
            if (ratio < 1.0 && ext >= 1) {
                const double last = std::abs(c.back()) * rk / r;
                acc += last * ratio / (1.0 - ratio);
            }
            return acc;
        }
        double operator()(const SumNode& s) const {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += tail_estimate(t, degree, r);
            return acc;
        }
        double operator()(const ProductNode& p) const {
            // |fg - T_N(T_N f * T_N g)| <= |f| tail_g + tail_f |T_N g| + aliased part
            double acc = 0.0;
            double sup_running = 1.0;
            std::vector<Complex> coeffs_acc;
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
                const auto& fac = p.factors[i];
                auto c = taylor_coeffs(fac, degree);
                double sup = 0.0;
                double rk = 1.0;
                for (const auto& cc : c) {
                    sup += std::abs(cc) * rk;
                    rk *= r;
                }
                const double tail = tail_estimate(fac, degree, r);
                acc = acc * (sup + tail) + sup_running * tail;
                sup_running *= sup + tail;
                coeffs_acc = i == 0 ? std::move(c) : cauchy(coeffs_acc, c, 2 * degree);
            }
            // part of the exact product of truncations that the final cut drops
            double rk = std::pow(r, degree + 1);
            for (std::size_t k = static_cast<std::size_t>(degree) + 1; k < coeffs_acc.size(); ++k) {
                acc += std::abs(coeffs_acc[k]) * rk;
                rk *= r;
            }
            return acc;
        }
    };
    return std::visit(Visitor{f, degree, r}, f.node());
}

}  // namespace

TruncatedSeries truncate(const AnalyticFn& f, int degree, double tail_radius, double tail_tol) {
    require(degree >= 0, "truncate: degree must be >= 0");
    if (degree > kMaxSeriesDegree)
        throw TruncationOverflow("truncate: requested degree exceeds the configured maximum");
    require(tail_radius > 0.0 && tail_radius < 1.0, "truncate: tail radius must be in (0,1)");

    TruncatedSeries out{AnalyticFn::series(taylor_coeffs(f, degree)),
                        TruncationInfo{0.0, tail_radius, false}};
    out.info.tail_bound = tail_estimate(f, degree, tail_radius);
    out.info.slow_decay = out.info.tail_bound > tail_tol;
    return out;
}

AnalyticFn antidifferentiate(const AnalyticFn& f, int degree) {
    if (degree > kMaxSeriesDegree)
        throw TruncationOverflow("antidifferentiate: requested degree exceeds the configured maximum");
    std::vector<Complex> a;
    if (const auto* s = f.series_coeffs())
        a = *s;
    else
        a = taylor_coeffs(f, degree);
    std::vector<Complex> b(a.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < a.size(); ++k) b[k + 1] = a[k] / static_cast<double>(k + 1);
    return AnalyticFn::series(std::move(b));
}

AnalyticFn multiply(const AnalyticFn& f, const AnalyticFn& g, int degree) {
    require(degree >= 0, "multiply: degree must be >= 0");
    if (degree > kMaxSeriesDegree)
        throw TruncationOverflow("multiply: requested degree exceeds the configured maximum");
    return AnalyticFn::series(cauchy(taylor_coeffs(f, degree), taylor_coeffs(g, degree), degree));
}

}  // namespace diskvolt
