#ifndef CAVITY_PROPAGATOR_HPP
#define CAVITY_PROPAGATOR_HPP

#include <complex>
#include <vector>

#include "cavity/reservoir.hpp"
#include "cavity/time_grid.hpp"

namespace cavity {

/// Samples of the propagating function u(t) together with the exact
/// right-hand-side derivative u_dot(t) = -i w_c u - int_0^t g(t-s) u(s) ds.
/// zero_flags marks nodes where |u| falls below zero_threshold; coefficient
/// extraction at those nodes yields flagged values instead of huge ones.
struct PropagatorSolution {
    static constexpr double zero_threshold = 1e-8;

    TimeGrid grid;
    double omega_c = 0.0;
    std::vector<std::complex<double>> u;
    std::vector<std::complex<double>> u_dot;
    std::vector<char> zero_flags;

    /// Wrap externally computed samples (analytic solutions in tests);
    /// zero_flags are derived from the samples.
    static PropagatorSolution from_samples(const TimeGrid& grid, double omega_c,
                                           std::vector<std::complex<double>> u,
                                           std::vector<std::complex<double>> u_dot);
};

/// Solve du/dt = -i w_c u - int_0^t g(t-s) u(s) ds, u(0) = 1, by trapezoidal
/// product integration with one predictor-corrector pass per step. The
/// oscillation at w_c is removed exactly (rotating-frame envelope), so the
/// step only has to resolve the memory-kernel timescales. Throws if |u|
/// exceeds 1 + 1e-3, which signals a too-coarse grid or an unphysical kernel.
PropagatorSolution solve_u(const KernelSeries& kernel, double omega_c, const TimeGrid& grid);

/// F(t) = int_0^t h(tau) u(t-tau) dtau and its derivative
/// F_dot(t) = h(t) u(0) + int_0^t h(tau) u_dot(t-tau) dtau, both by the same
/// trapezoidal rule as the stepper.
struct ConvolutionSeries {
    TimeGrid grid;
    std::vector<std::complex<double>> F;
    std::vector<std::complex<double>> F_dot;
};

ConvolutionSeries compute_F(const KernelSeries& h, const PropagatorSolution& sol);

/// u_dot/u at node j; a quiet NaN pair when the node is flagged as a zero
/// of u (flagging is the contract, not an error).
std::complex<double> logarithmic_derivative(const PropagatorSolution& sol, int j);

} // namespace cavity

#endif
