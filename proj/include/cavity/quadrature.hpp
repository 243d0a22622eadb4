#ifndef CAVITY_QUADRATURE_HPP
#define CAVITY_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavity::quad {

/// Raised when panel refinement exhausts the depth budget; carries the
/// residual actually achieved so callers can report it.
struct QuadratureError : std::runtime_error {
    double residual;
    QuadratureError(const std::string& msg, double res)
        : std::runtime_error(msg + " (achieved residual " + std::to_string(res) + ")"),
          residual(res) {}
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration
// on the Legendre polynomial.
template <int N>
struct GaussLegendre {
    std::array<double, N> node{};
    std::array<double, N> weight{};

    GaussLegendre() {
        for (int i = 0; i < N; ++i) {
            // Chebyshev-based initial guess for the i-th root.
            double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = N * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= N; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = N * (x * p1 - p0) / (x * x - 1.0);
            node[i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre<15>& gl15() {
    static const GaussLegendre<15> rule;
    return rule;
}

template <typename F>
std::complex<double> gl15_panel(F&& f, double a, double b) {
    const auto& rule = gl15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < 15; ++i)
        acc += rule.weight[i] * f(mid + half * rule.node[i]);
    return acc * half;
}

template <typename F>
std::complex<double> adapt(F&& f, double a, double b, std::complex<double> whole,
                           double tol, int depth, double& worst) {
    const double mid = 0.5 * (a + b);
    const std::complex<double> left = gl15_panel(f, a, mid);
    const std::complex<double> right = gl15_panel(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= tol || depth <= 0) {
        if (depth <= 0 && err > worst) worst = err;
        return left + right;
    }
    return adapt(f, a, mid, left, 0.5 * tol, depth - 1, worst) +
           adapt(f, mid, b, right, 0.5 * tol, depth - 1, worst);
}

} // namespace detail

/// Adaptive Gauss-Legendre integration of a complex-valued integrand over
/// [a, b]. Panel edges may be seeded through `breakpoints` (useful when the
/// integrand has kinks, e.g. piecewise-linear tabulated data) and
/// `min_panels` (oscillatory integrands). Relative tolerance is applied to
/// the accumulated magnitude with `abs_floor` as a scale floor.
template <typename F>
std::complex<double> integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                               int min_panels = 1, const std::vector<double>* breakpoints = nullptr,
                               double abs_floor = 1e-300, int max_depth = 30) {
    if (!(b > a)) return {0.0, 0.0};

    std::vector<double> edges;
    edges.push_back(a);
    if (breakpoints)
        for (double x : *breakpoints)
            if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);

    if (min_panels > 1) {
        std::vector<double> refined;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            double lo = edges[i], hi = edges[i + 1];
            int p = std::max(1, static_cast<int>(min_panels * (hi - lo) / (b - a) + 0.5));
            for (int k = 0; k < p; ++k) refined.push_back(lo + (hi - lo) * k / p);
        }
        refined.push_back(b);
        edges = std::move(refined);
    }

    // First pass fixes the magnitude scale for the relative tolerance.
    std::vector<std::complex<double>> coarse(edges.size() - 1);
    double scale = abs_floor;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        coarse[i] = detail::gl15_panel(f, edges[i], edges[i + 1]);
        scale += std::abs(coarse[i]);
    }
    const double tol = rel_tol * scale;

    std::complex<double> total{0.0, 0.0};
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += detail::adapt(f, edges[i], edges[i + 1], coarse[i],
                               tol / static_cast<double>(coarse.size()), max_depth, worst);
    if (worst > tol)
        throw QuadratureError("quadrature did not converge to requested tolerance", worst);
    return total;
}

} // namespace cavity::quad

#endif
