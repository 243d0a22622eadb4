#include "cavity/propagator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cavity {

namespace {
using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

std::vector<char> flag_zeros(const std::vector<cd>& u) {
    std::vector<char> flags(u.size(), 0);
    for (std::size_t j = 0; j < u.size(); ++j)
        flags[j] = std::abs(u[j]) < PropagatorSolution::zero_threshold ? 1 : 0;
    return flags;
}
} // namespace

PropagatorSolution PropagatorSolution::from_samples(const TimeGrid& grid, double omega_c,
                                                    std::vector<cd> u, std::vector<cd> u_dot) {
    if (u.size() != grid.size() || u_dot.size() != grid.size())
        throw std::invalid_argument("PropagatorSolution::from_samples: length mismatch");
    PropagatorSolution sol;
    sol.grid = grid;
    sol.omega_c = omega_c;
    sol.zero_flags = flag_zeros(u);
    sol.u = std::move(u);
    sol.u_dot = std::move(u_dot);
    return sol;
}

PropagatorSolution solve_u(const KernelSeries& kernel, double omega_c, const TimeGrid& grid) {
    if (!(kernel.grid == grid))
        throw std::invalid_argument("solve_u: kernel not defined on the requested grid");
    if (!std::isfinite(omega_c)) throw std::invalid_argument("solve_u: omega_c not finite");

    const std::size_t n = grid.size();
    const double dt = grid.dt;

    // Rotating-frame envelope v(t) = e^{+i w_c t} u(t) obeys
    //   dv/dt = -int_0^t ghat(t-s) v(s) ds,   ghat(s) = g(s) e^{+i w_c s},
    // which removes the stiff w_c rotation exactly (decoupled limit: v == 1).
    std::vector<cd> phase(n), ghat(n);
    for (std::size_t j = 0; j < n; ++j) {
        phase[j] = std::exp(-I * omega_c * grid.time(static_cast<int>(j)));
        ghat[j] = kernel.values[j] * std::conj(phase[j]);
    }

    std::vector<cd> v(n), rhs(n);
    v[0] = cd{1.0, 0.0};
    rhs[0] = cd{0.0, 0.0};

    const cd g0 = ghat[0];
    for (std::size_t j = 1; j < n; ++j) {
        // Interior part of the trapezoidal memory integral at t_j; the
        // endpoint term 0.5*dt*g0*v_j is added per candidate value below.
        cd interior = 0.5 * ghat[j] * v[0];
        for (std::size_t m = 1; m <= j - 1; ++m)
            interior += ghat[j - m] * v[m];
        interior *= dt;

        auto rhs_at = [&](cd v_end) { return -(interior + 0.5 * dt * g0 * v_end); };

        const cd v_pred = v[j - 1] + dt * rhs[j - 1];
        const cd v_corr = v[j - 1] + 0.5 * dt * (rhs[j - 1] + rhs_at(v_pred));
        v[j] = v_corr;
        rhs[j] = rhs_at(v_corr);

        if (std::abs(v[j]) > 1.0 + 1e-3)
            throw std::runtime_error("solve_u: |u| exceeded 1 + 1e-3 at step " +
                                     std::to_string(j) + " (t = " +
                                     std::to_string(grid.time(static_cast<int>(j))) +
                                     "); reduce dt or check the kernel");
    }

    PropagatorSolution sol;
    sol.grid = grid;
    sol.omega_c = omega_c;
    sol.u.resize(n);
    sol.u_dot.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        sol.u[j] = phase[j] * v[j];
        sol.u_dot[j] = -I * omega_c * sol.u[j] + phase[j] * rhs[j];
    }
    sol.zero_flags = flag_zeros(sol.u);
    return sol;
}

ConvolutionSeries compute_F(const KernelSeries& h, const PropagatorSolution& sol) {
    if (!(h.grid == sol.grid))
        throw std::invalid_argument("compute_F: kernel and propagator grids differ");

    const std::size_t n = sol.grid.size();
    const double dt = sol.grid.dt;
    ConvolutionSeries out{sol.grid, std::vector<cd>(n), std::vector<cd>(n)};

    out.F[0] = cd{0.0, 0.0};
    out.F_dot[0] = h.values[0] * sol.u[0];
    for (std::size_t j = 1; j < n; ++j) {
        cd acc_f = 0.5 * (h.values[0] * sol.u[j] + h.values[j] * sol.u[0]);
        cd acc_d = 0.5 * (h.values[0] * sol.u_dot[j] + h.values[j] * sol.u_dot[0]);
        for (std::size_t m = 1; m <= j - 1; ++m) {
            acc_f += h.values[m] * sol.u[j - m];
            acc_d += h.values[m] * sol.u_dot[j - m];
        }
        out.F[j] = dt * acc_f;
        out.F_dot[j] = h.values[j] * sol.u[0] + dt * acc_d;
    }
    return out;
}

std::complex<double> logarithmic_derivative(const PropagatorSolution& sol, int j) {
    if (j < 0 || static_cast<std::size_t>(j) >= sol.grid.size())
        throw std::out_of_range("logarithmic_derivative: node index outside grid");
    if (sol.zero_flags[static_cast<std::size_t>(j)]) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan};
    }
    return sol.u_dot[static_cast<std::size_t>(j)] / sol.u[static_cast<std::size_t>(j)];
}

} // namespace cavity
