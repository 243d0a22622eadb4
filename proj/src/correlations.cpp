#include "cavity/correlations.hpp"

#include <cmath>
#include <stdexcept>

namespace cavity {

namespace {
using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// v1 for the factorized thermal state:
//   v1(t) = int_0^t int_0^t u(s') gtilde(s - s') u*(s) ds ds'
// on the square [0, t_n]^2 by double trapezoid. Row sums
// A_i = sum_j G_{i-j} u_j are updated incrementally, O(n) per step and
// O(N^2) total. gtilde at negative arguments is conj(gtilde(|.|)).
struct ThermalNoiseAccumulator {
    const std::vector<cd>& u;
    const std::vector<cd>& G;
    double dt;
    std::vector<cd> row; // A_i for i <= current step

    ThermalNoiseAccumulator(const std::vector<cd>& u_, const std::vector<cd>& G_, double dt_)
        : u(u_), G(G_), dt(dt_), row(u_.size()) {
        row[0] = G[0] * u[0];
    }

    cd g_at(long m) const { return m >= 0 ? G[static_cast<std::size_t>(m)]
                                          : std::conj(G[static_cast<std::size_t>(-m)]); }

    // Advance to step n (call with n = 1, 2, ... in order), returning
    // (v1, v1_dot) at t_n.
    std::pair<double, double> advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            row[i] += g_at(static_cast<long>(i) - static_cast<long>(n)) * u[n];
        cd fresh{0.0, 0.0};
        for (std::size_t j = 0; j <= n; ++j)
            fresh += g_at(static_cast<long>(n) - static_cast<long>(j)) * u[j];
        row[n] = fresh;
        return sample(n);
    }

    std::pair<double, double> sample(std::size_t n) const {
        auto weighted = [&](std::size_t i) {
            return row[i] - 0.5 * g_at(static_cast<long>(i)) * u[0] -
                   0.5 * g_at(static_cast<long>(i) - static_cast<long>(n)) * u[n];
        };
        cd acc{0.0, 0.0};
        for (std::size_t i = 0; i <= n; ++i) acc += std::conj(u[i]) * weighted(i);
        acc -= 0.5 * (std::conj(u[0]) * weighted(0) + std::conj(u[n]) * weighted(n));
        const double v1 = std::max(0.0, (dt * dt * acc).real());

        // Single-integral reduction of the derivative:
        // v1_dot = 2 Re[u*(t_n) int_0^{t_n} gtilde(t_n - s) u(s) ds].
        const cd q = dt * weighted(n);
        const double v1_dot = 2.0 * (std::conj(u[n]) * q).real();
        return {v1, v1_dot};
    }
};

void require_shared_grid(const TimeGrid& a, const TimeGrid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string("correlation_functions: ") + what +
                                               " not on the propagator grid");
}
} // namespace

CorrelationFunctions CorrelationFunctions::zero(const TimeGrid& grid) {
    CorrelationFunctions c;
    c.grid = grid;
    const std::size_t n = grid.size();
    c.nu1.assign(n, {0.0, 0.0});
    c.nu2.assign(n, {0.0, 0.0});
    c.v0.assign(n, {0.0, 0.0});
    c.v2.assign(n, {0.0, 0.0});
    c.v1.assign(n, 0.0);
    c.nu1_dot.assign(n, {0.0, 0.0});
    c.nu2_dot.assign(n, {0.0, 0.0});
    c.v2_dot.assign(n, {0.0, 0.0});
    c.v1_dot.assign(n, 0.0);
    return c;
}

CorrelationFunctions correlation_functions(const InitialStateSpec& spec,
                                           const PropagatorSolution& sol,
                                           const ConvolutionSeries* F,
                                           const KernelSeries* gtilde) {
    validate(spec);
    CorrelationFunctions out = CorrelationFunctions::zero(sol.grid);
    const std::size_t n = sol.grid.size();

    if (const auto* th = std::get_if<UncorrelatedThermal>(&spec)) {
        (void)th;
        if (!gtilde) throw std::invalid_argument(
            "correlation_functions: thermal variant needs the occupation-weighted kernel");
        require_shared_grid(gtilde->grid, sol.grid, "gtilde");
        ThermalNoiseAccumulator acc(sol.u, gtilde->values, sol.grid.dt);
        std::tie(out.v1[0], out.v1_dot[0]) = acc.sample(0);
        for (std::size_t j = 1; j < n; ++j)
            std::tie(out.v1[j], out.v1_dot[j]) = acc.advance(j);
        return out;
    }

    if (!F) throw std::invalid_argument(
        "correlation_functions: correlated variant needs the convolution series F");
    require_shared_grid(F->grid, sol.grid, "F");

    cd cross;       // coefficient of F in the cross-correlation function
    double noise;   // coefficient of |F|^2 in v1
    bool two_photon;
    if (const auto* sq = std::get_if<SqueezedVacuumCorrelated>(&spec)) {
        cross = -I * std::sinh(2.0 * sq->r_s) * std::exp(I * sq->theta_s) /
                std::sqrt(2.0 * M_PI);
        const double sh = std::sinh(sq->r_s);
        noise = 2.0 / M_PI * sh * sh;
        two_photon = true;
    } else {
        const auto& bs = std::get<BeamSplitterThermal>(spec);
        cross = -I * std::sin(bs.vartheta) * (bs.nbar_a - bs.nbar_b1) / std::sqrt(2.0 * M_PI);
        noise = 2.0 / M_PI * bs.site_occupation();
        two_photon = false;
    }

    auto& target = two_photon ? out.nu2 : out.nu1;
    auto& target_dot = two_photon ? out.nu2_dot : out.nu1_dot;
    for (std::size_t j = 0; j < n; ++j) {
        target[j] = cross * F->F[j];
        target_dot[j] = cross * F->F_dot[j];
        out.v1[j] = noise * std::norm(F->F[j]);
        out.v1_dot[j] = noise * 2.0 * (std::conj(F->F[j]) * F->F_dot[j]).real();
    }
    return out;
}

GaussianMoments initial_chain_moments(const InitialStateSpec& spec, int chain_size) {
    if (chain_size < 1)
        throw std::invalid_argument("initial_chain_moments: need chain_size >= 1");
    validate(spec);
    GaussianMoments m = GaussianMoments::zero(chain_size + 1);

    if (const auto* sq = std::get_if<SqueezedVacuumCorrelated>(&spec)) {
        const double sh = std::sinh(sq->r_s);
        m.occupations(0, 0) = m.occupations(1, 1) = sh * sh;
        m.pair(0, 1) = m.pair(1, 0) =
            0.5 * std::sinh(2.0 * sq->r_s) * std::exp(I * sq->theta_s);
        return m;
    }
    if (const auto* bs = std::get_if<BeamSplitterThermal>(&spec)) {
        m.occupations(0, 0) = bs->cavity_occupation();
        m.occupations(1, 1) = bs->site_occupation();
        m.occupations(0, 1) = m.occupations(1, 0) = bs->cross_correlation();
        return m;
    }
    const auto& th = std::get<UncorrelatedThermal>(spec);
    m.mean(0) = th.cavity.mean;
    m.occupations(0, 0) = th.cavity.n0;
    m.pair(0, 0) = th.cavity.s0;
    // Site occupation at the resonator frequency (units fix omega0 = 1);
    // exact for frequency-independent occupations.
    const double site = th.occupation(1.0);
    for (int i = 1; i <= chain_size; ++i) m.occupations(i, i) = site;
    return m;
}

std::vector<cd> discrete_two_photon_v2(const DiscreteReservoir& reservoir,
                                       const Eigen::MatrixXcd& pair_corr,
                                       const PropagatorSolution& sol) {
    const auto n_modes = static_cast<int>(reservoir.modes.size());
    if (pair_corr.rows() != n_modes || pair_corr.cols() != n_modes)
        throw std::invalid_argument("discrete_two_photon_v2: pair correlation size mismatch");

    const std::size_t n = sol.grid.size();
    const double dt = sol.grid.dt;

    // q_k(t) = int_0^t e^{-i w_k s} u(t-s) ds = e^{-i w_k t} R_k(t) with the
    // running integral R_k(t) = int_0^t e^{+i w_k s} u(s) ds.
    std::vector<cd> running(static_cast<std::size_t>(n_modes), cd{0.0, 0.0});
    std::vector<cd> out(n, cd{0.0, 0.0});
    Eigen::VectorXcd q(n_modes);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = sol.grid.time(static_cast<int>(j));
        for (int k = 0; k < n_modes; ++k) {
            const double w = reservoir.modes[static_cast<std::size_t>(k)].omega;
            if (j > 0) {
                const double tp = sol.grid.time(static_cast<int>(j) - 1);
                running[static_cast<std::size_t>(k)] +=
                    0.5 * dt * (std::exp(I * w * tp) * sol.u[j - 1] +
                                std::exp(I * w * t) * sol.u[j]);
            }
            q(k) = reservoir.modes[static_cast<std::size_t>(k)].coupling *
                   std::exp(-I * w * t) * running[static_cast<std::size_t>(k)];
        }
        out[j] = -(q.transpose() * pair_corr * q)(0);
    }
    return out;
}

} // namespace cavity
