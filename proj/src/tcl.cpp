#include "cavity/tcl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cavity {

namespace {
using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
const double NaN = std::numeric_limits<double>::quiet_NaN();
} // namespace

MasterEqCoefficients extract_coefficients(const PropagatorSolution& sol,
                                          const CorrelationFunctions& corr) {
    if (!(corr.grid == sol.grid))
        throw std::invalid_argument("extract_coefficients: correlation grid mismatch");
    if (corr.nu1_dot.size() != sol.grid.size() || corr.v1_dot.size() != sol.grid.size())
        throw std::invalid_argument("extract_coefficients: derivative fields missing");

    const std::size_t n = sol.grid.size();
    MasterEqCoefficients out;
    out.grid = sol.grid;
    out.delta.resize(n);
    out.gamma1.resize(n);
    out.gamma2.resize(n);
    out.gamma3.resize(n);
    out.valid_flags.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        if (sol.zero_flags[j]) {
            out.delta[j] = NaN;
            out.gamma1[j] = NaN;
            out.gamma2[j] = NaN;
            out.gamma3[j] = cd{NaN, NaN};
            out.valid_flags[j] = 0;
            continue;
        }
        const cd u = sol.u[j];
        const cd udot = sol.u_dot[j];
        const cd log_deriv = udot / u;

        out.delta[j] = -log_deriv.imag();
        out.gamma1[j] = -log_deriv.real();
        out.gamma2[j] =
            corr.v1_dot[j] +
            2.0 * (u * std::conj(corr.nu1_dot[j]) -
                   log_deriv * (corr.v1[j] + std::conj(u) * corr.nu1[j])).real();
        out.gamma3[j] = -0.5 * corr.v2_dot[j] + log_deriv * corr.v2[j] -
                        u * corr.nu2_dot[j] + udot * corr.nu2[j];
        out.valid_flags[j] = 1;
    }
    return out;
}

double MomentOdeResiduals::max_relative() const {
    auto fold = [](const std::vector<double>& res, double slope) {
        double worst = 0.0;
        for (double r : res)
            if (std::isfinite(r) && r > worst) worst = r;
        return slope > 0.0 ? worst / slope : (worst > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    };
    return std::max({fold(res_mean, slope_mean), fold(res_n, slope_n), fold(res_s, slope_s)});
}

MomentOdeResiduals moment_ode_residuals(const MasterEqCoefficients& coeffs,
                                        const ObservableTrajectory& traj) {
    if (!(coeffs.grid == traj.grid))
        throw std::invalid_argument("moment_ode_residuals: grid mismatch");
    const std::size_t n = coeffs.grid.size();
    const double dt = coeffs.grid.dt;

    MomentOdeResiduals out;
    out.grid = coeffs.grid;
    out.res_mean.assign(n, NaN);
    out.res_n.assign(n, NaN);
    out.res_s.assign(n, NaN);

    // Max slopes from the same central differences used for the residuals.
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double dmean = std::abs(traj.mean[j + 1] - traj.mean[j - 1]) / (2.0 * dt);
        const double dn = std::abs(traj.n[j + 1] - traj.n[j - 1]) / (2.0 * dt);
        const double ds = std::abs(traj.s[j + 1] - traj.s[j - 1]) / (2.0 * dt);
        out.slope_mean = std::max(out.slope_mean, dmean);
        out.slope_n = std::max(out.slope_n, dn);
        out.slope_s = std::max(out.slope_s, ds);
    }

    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (!coeffs.valid_flags[j]) continue;
        const cd mean_dot = (traj.mean[j + 1] - traj.mean[j - 1]) / (2.0 * dt);
        const double n_dot = (traj.n[j + 1] - traj.n[j - 1]) / (2.0 * dt);
        const cd s_dot = (traj.s[j + 1] - traj.s[j - 1]) / (2.0 * dt);

        const cd damping{coeffs.gamma1[j], coeffs.delta[j]}; // gamma1 + i delta
        out.res_mean[j] = std::abs(mean_dot + damping * traj.mean[j]);
        out.res_n[j] = std::abs(n_dot + 2.0 * coeffs.gamma1[j] * traj.n[j] - coeffs.gamma2[j]);
        out.res_s[j] = std::abs(s_dot + 2.0 * damping * traj.s[j] + 2.0 * coeffs.gamma3[j]);
    }
    return out;
}

FockDensityMatrix thermal_state(double nbar, int dim) {
    if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
    if (dim < 2) throw std::invalid_argument("thermal_state: dim must be >= 2");
    FockDensityMatrix rho;
    rho.rho = Eigen::MatrixXcd::Zero(dim, dim);
    if (nbar == 0.0) {
        rho.rho(0, 0) = 1.0;
        return rho;
    }
    const double ratio = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {
        rho.rho(k, k) = p;
        total += p;
        p *= ratio;
    }
    rho.rho /= total; // renormalize the truncated tail
    return rho;
}

FockDensityMatrix fock_state(int n, int dim) {
    if (n < 0 || n >= dim) throw std::invalid_argument("fock_state: level outside cutoff");
    FockDensityMatrix rho;
    rho.rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho.rho(n, n) = 1.0;
    return rho;
}

namespace {

// Generator action with the free rotation at frame_omega removed:
//   delta_eff = delta - frame_omega, gamma3_eff = gamma3 e^{2 i frame_omega t}.
// Jump structure on matrix entries (m, n), s_k = sqrt(k):
//   -i delta_eff (m - n) rho_mn
//   gamma1: 2 s_{m+1} s_{n+1} rho_{m+1,n+1} - (m + n) rho_mn
//   gamma2: s_{m+1} s_{n+1} rho_{m+1,n+1} + s_m s_n rho_{m-1,n-1}
//           - (m + n + 1) rho_mn          [Hermitian form]
//   gamma3*: 2 s_{m+1} s_n rho_{m+1,n-1} - s_{m+1} s_{m+2} rho_{m+2,n}
//            - s_n s_{n-1} rho_{m,n-2}
//   gamma3:  2 s_m s_{n+1} rho_{m-1,n+1} - s_m s_{m-1} rho_{m-2,n}
//            - s_{n+1} s_{n+2} rho_{m,n+2}
void apply_generator(const Eigen::MatrixXcd& rho, double delta_eff, double g1, double g2,
                     cd g3, const std::vector<double>& s, Eigen::MatrixXcd& out) {
    const int d = static_cast<int>(rho.rows());
    const cd g3c = std::conj(g3);
    for (int nn = 0; nn < d; ++nn) {
        for (int m = 0; m < d; ++m) {
            cd acc = -I * delta_eff * static_cast<double>(m - nn) * rho(m, nn);
            acc -= (g1 * (m + nn) + g2 * (m + nn + 1)) * rho(m, nn);
            if (m + 1 < d && nn + 1 < d)
                acc += (2.0 * g1 + g2) * s[m + 1] * s[nn + 1] * rho(m + 1, nn + 1);
            if (m >= 1 && nn >= 1) acc += g2 * s[m] * s[nn] * rho(m - 1, nn - 1);

            if (m + 1 < d && nn >= 1) acc += 2.0 * g3c * s[m + 1] * s[nn] * rho(m + 1, nn - 1);
            if (m + 2 < d) acc -= g3c * s[m + 1] * s[m + 2] * rho(m + 2, nn);
            if (nn >= 2) acc -= g3c * s[nn] * s[nn - 1] * rho(m, nn - 2);

            if (m >= 1 && nn + 1 < d) acc += 2.0 * g3 * s[m] * s[nn + 1] * rho(m - 1, nn + 1);
            if (m >= 2) acc -= g3 * s[m] * s[m - 1] * rho(m - 2, nn);
            if (nn + 2 < d) acc -= g3 * s[nn + 1] * s[nn + 2] * rho(m, nn + 2);

            out(m, nn) = acc;
        }
    }
}

struct FrameCoefficients {
    double delta_eff;
    double g1, g2;
    cd g3;
};

} // namespace

FockMomentTrajectory fock_evolve(const MasterEqCoefficients& coeffs,
                                 const FockDensityMatrix& rho0, const TimeGrid& grid,
                                 double frame_omega) {
    if (!(coeffs.grid == grid))
        throw std::invalid_argument("fock_evolve: coefficients not on the requested grid");
    const int d = rho0.dim();
    if (d < 2) throw std::invalid_argument("fock_evolve: cutoff too small");
    if (rho0.top_occupation() > 1e-8)
        throw std::invalid_argument(
            "fock_evolve: initial top-level occupation exceeds 1e-8; increase N_max");

    const int n_macro = grid.n_steps / 2;
    if (n_macro < 2)
        throw std::invalid_argument("fock_evolve: grid too short, need n_steps >= 4");
    const double h = 2.0 * grid.dt;

    auto frame_at = [&](int node) -> FrameCoefficients {
        if (!coeffs.valid_flags[static_cast<std::size_t>(node)])
            throw std::runtime_error("fock_evolve: coefficients invalid (zero of u) at node " +
                                     std::to_string(node));
        const double t = grid.time(node);
        return {coeffs.delta[static_cast<std::size_t>(node)] - frame_omega,
                coeffs.gamma1[static_cast<std::size_t>(node)],
                coeffs.gamma2[static_cast<std::size_t>(node)],
                coeffs.gamma3[static_cast<std::size_t>(node)] *
                    std::exp(2.0 * I * frame_omega * t)};
    };

    std::vector<double> s(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) s[static_cast<std::size_t>(k)] = std::sqrt(double(k));

    Eigen::MatrixXcd rho = rho0.rho;
    Eigen::MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), work(d, d);

    FockMomentTrajectory out;
    out.grid = TimeGrid(h, n_macro);
    out.mean.resize(static_cast<std::size_t>(n_macro) + 1);
    out.n.resize(static_cast<std::size_t>(n_macro) + 1);
    out.s.resize(static_cast<std::size_t>(n_macro) + 1);
    out.trace_drift.resize(static_cast<std::size_t>(n_macro) + 1);
    out.top_occupation.resize(static_cast<std::size_t>(n_macro) + 1);

    auto record = [&](int macro) {
        const double t = h * macro;
        cd mean{0.0, 0.0}, ss{0.0, 0.0};
        double nn = 0.0;
        for (int m = 0; m < d; ++m) {
            nn += m * rho(m, m).real();
            if (m + 1 < d) mean += s[m + 1] * rho(m + 1, m);
            if (m + 2 < d) ss += s[m + 1] * s[m + 2] * rho(m + 2, m);
        }
        // Undo the frame rotation.
        const cd ph = std::exp(-I * frame_omega * t);
        out.mean[static_cast<std::size_t>(macro)] = mean * ph;
        out.n[static_cast<std::size_t>(macro)] = nn;
        out.s[static_cast<std::size_t>(macro)] = ss * ph * ph;
        out.trace_drift[static_cast<std::size_t>(macro)] = std::abs(rho.trace() - cd{1.0, 0.0});
        out.top_occupation[static_cast<std::size_t>(macro)] = rho(d - 1, d - 1).real();
        if (out.top_occupation[static_cast<std::size_t>(macro)] > 1e-4)
            throw std::runtime_error(
                "fock_evolve: truncation breach, top-level occupation " +
                std::to_string(out.top_occupation[static_cast<std::size_t>(macro)]) +
                " at t = " + std::to_string(t) + "; increase N_max");
    };

    record(0);
    for (int step = 0; step < n_macro; ++step) {
        const FrameCoefficients c0 = frame_at(2 * step);
        const FrameCoefficients cm = frame_at(2 * step + 1);
        const FrameCoefficients c1 = frame_at(2 * step + 2);

        apply_generator(rho, c0.delta_eff, c0.g1, c0.g2, c0.g3, s, k1);
        work = rho + (0.5 * h) * k1;
        apply_generator(work, cm.delta_eff, cm.g1, cm.g2, cm.g3, s, k2);
        work = rho + (0.5 * h) * k2;
        apply_generator(work, cm.delta_eff, cm.g1, cm.g2, cm.g3, s, k3);
        work = rho + h * k3;
        apply_generator(work, c1.delta_eff, c1.g1, c1.g2, c1.g3, s, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        // Keep the representation exactly Hermitian; the generator preserves
        // Hermiticity up to roundoff.
        rho = 0.5 * (rho + rho.adjoint()).eval();
        const double drift = std::abs(rho.trace() - cd{1.0, 0.0});
        if (!std::isfinite(drift))
            throw std::runtime_error("fock_evolve: integration diverged at step " +
                                     std::to_string(step));
        if (drift > 1e-9) {
            rho /= rho.trace().real();
            ++out.renormalizations;
        }
        record(step + 1);
    }
    return out;
}

} // namespace cavity
