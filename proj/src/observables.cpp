#include "cavity/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace cavity {

namespace {
constexpr double physicality_slack = 1e-9;
}

SqueezingParameters squeezing_decomposition(double n, std::complex<double> s) {
    if (n < 0.0) throw std::invalid_argument("squeezing_decomposition: n must be >= 0");
    SqueezingParameters out;
    double mag = std::abs(s);
    out.physical = n + 0.5 - mag >= -physicality_slack;
    if (!out.physical) mag = n + 0.5 - 1e-12; // clamp to the physical boundary
    if (mag == 0.0) {
        out.r = 0.0;
        out.theta = 0.0;
        out.nbar = n;
        return out;
    }
    out.r = 0.25 * std::log((n + mag + 0.5) / (n - mag + 0.5));
    out.theta = std::arg(s);
    const double det = (n + 0.5) * (n + 0.5) - mag * mag;
    out.nbar = std::sqrt(std::max(det, 0.0)) - 0.5;
    return out;
}

Eigen::Matrix2d covariance_matrix(double n, std::complex<double> s) {
    if (n < 0.0) throw std::invalid_argument("covariance_matrix: n must be >= 0");
    Eigen::Matrix2d cov;
    cov(0, 0) = 0.5 + n + s.real();
    cov(1, 1) = 0.5 + n - s.real();
    cov(0, 1) = cov(1, 0) = s.imag();
    return cov;
}

ObservableTrajectory evolve_observables(const PropagatorSolution& sol,
                                        const CorrelationFunctions& corr,
                                        const InitialStateSpec& spec) {
    if (!(corr.grid == sol.grid))
        throw std::invalid_argument("evolve_observables: correlation grid mismatch");
    const CavityMoments init = initial_cavity_moments(spec);

    const std::size_t n = sol.grid.size();
    ObservableTrajectory out;
    out.grid = sol.grid;
    out.mean.resize(n);
    out.n.resize(n);
    out.s.resize(n);
    out.r.resize(n);
    out.theta.resize(n);
    out.nbar.resize(n);
    out.physical_flags.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        const std::complex<double> u = sol.u[j];
        out.mean[j] = u * init.mean + corr.v0[j];
        double nj = std::norm(u) * init.n0 + 2.0 * (std::conj(u) * corr.nu1[j]).real() +
                    corr.v1[j];
        if (nj < 0.0) nj = 0.0; // roundoff guard; exact value is a norm
        out.n[j] = nj;
        out.s[j] = u * u * init.s0 + 2.0 * u * corr.nu2[j] + corr.v2[j];

        const SqueezingParameters sq = squeezing_decomposition(out.n[j], out.s[j]);
        out.r[j] = sq.r;
        out.theta[j] = sq.theta;
        out.nbar[j] = sq.nbar;
        out.physical_flags[j] = sq.physical ? 1 : 0;
    }
    return out;
}

} // namespace cavity
