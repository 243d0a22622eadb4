#ifndef CAVITY_TCL_HPP
#define CAVITY_TCL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cavity/correlations.hpp"
#include "cavity/observables.hpp"
#include "cavity/propagator.hpp"

namespace cavity {

/// Time-local master-equation coefficients. valid_flags mirrors the
/// propagator zero flags; values at invalid nodes are NaN and excluded from
/// export statistics and validation.
struct MasterEqCoefficients {
    TimeGrid grid;
    std::vector<double> delta;  // renormalized frequency, -Im[u_dot/u]
    std::vector<double> gamma1; // dissipation, -Re[u_dot/u]
    std::vector<double> gamma2; // fluctuation
    std::vector<std::complex<double>> gamma3; // two-photon decoherence
    std::vector<char> valid_flags;
};

/// Coefficients from the propagating function and correlation functions:
///   delta  = -Im[u_dot/u],  gamma1 = -Re[u_dot/u],
///   gamma2 = v1_dot + 2 Re[u nu1_dot* - (u_dot/u)(v1 + u* nu1)],
///   gamma3 = -v2_dot/2 + (u_dot/u) v2 - u nu2_dot + u_dot nu2.
MasterEqCoefficients extract_coefficients(const PropagatorSolution& sol,
                                          const CorrelationFunctions& corr);

/// Residuals of the moment equations generated by the master equation,
///   d<a>/dt = -(gamma1 + i delta) <a>,
///   dn/dt   = -2 gamma1 n + gamma2,
///   ds/dt   = -2 (gamma1 + i delta) s - 2 gamma3,
/// with trajectory derivatives by O(dt^2) central differences. Endpoints and
/// flagged nodes carry NaN and are excluded from the summary.
struct MomentOdeResiduals {
    TimeGrid grid;
    std::vector<double> res_mean, res_n, res_s; // absolute residuals
    double slope_mean = 0.0, slope_n = 0.0, slope_s = 0.0; // max |d/dt| normalizers

    /// Largest residual relative to the max slope of its own equation.
    double max_relative() const;
};

MomentOdeResiduals moment_ode_residuals(const MasterEqCoefficients& coeffs,
                                        const ObservableTrajectory& traj);

/// Density matrix on the truncated Fock space {|0>, ..., |N_max>}.
struct FockDensityMatrix {
    Eigen::MatrixXcd rho;

    int dim() const { return static_cast<int>(rho.rows()); }
    double trace_error() const { return std::abs(rho.trace() - std::complex<double>(1.0)); }
    double top_occupation() const { return rho(dim() - 1, dim() - 1).real(); }
};

/// Thermal state with mean occupation nbar.
FockDensityMatrix thermal_state(double nbar, int dim);
/// Number state |n><n|.
FockDensityMatrix fock_state(int n, int dim);

/// Moments extracted from the Fock-space integration, sampled every other
/// grid node (the classic fourth-order stepper advances by 2*dt so that all
/// stage times fall on coefficient nodes; no interpolation).
struct FockMomentTrajectory {
    TimeGrid grid; // spacing 2*dt relative to the coefficient grid
    std::vector<std::complex<double>> mean;
    std::vector<double> n;
    std::vector<std::complex<double>> s;
    std::vector<double> trace_drift;   // |tr rho - 1| before renormalization
    std::vector<double> top_occupation;
    int renormalizations = 0; // trace drift beyond 1e-9 renormalized, counted
};

/// Integrate the master equation with the extracted coefficients. frame_omega
/// selects the (exact) rotating frame used internally; pass the cavity
/// frequency so that the stiff free rotation of far coherences drops out.
/// Errors if the truncation leaks (top occupation > 1e-4) or a stage touches
/// an invalid coefficient node.
FockMomentTrajectory fock_evolve(const MasterEqCoefficients& coeffs,
                                 const FockDensityMatrix& rho0, const TimeGrid& grid,
                                 double frame_omega = 0.0);

} // namespace cavity

#endif
